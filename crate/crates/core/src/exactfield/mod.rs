//! Exact scalar, vector and projective arithmetic over `Q` and quadratic towers.

mod literal;
mod rotation;
mod scalar;
mod vector;

pub use literal::{
    parse_proj, parse_proj_at, parse_scalar, parse_scalar_at, parse_vec3, parse_vec3_at, Cursor,
};
pub use rotation::{orthogonal_basis, rational_rotation};
pub use scalar::{scalar_arith, ArithOp, Extension, Scalar, Tower};
pub use vector::{proj_cross, Mat3, ProjPoint, Vec3};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of negative value {0}")]
    NegativeRadicand(String),
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("basis scales must be nonzero")]
    ZeroScale,
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}
