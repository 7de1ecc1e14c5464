//! Compiling polynomial equations into cross product equations.
//!
//! A value `r` is encoded as the point `Θ(r) = F(v1 − r v2)` of a frame built
//! on an orthogonal basis. Ring operations become fixed cross product gadgets,
//! and the frame itself can be replaced by terms over three free points.

mod compile;
mod frame;
mod gadgets;
mod identities;
mod io;
mod witness;

pub use compile::{
    compile_constant_free, compile_equation, compile_frame_free, compile_with_constants,
    size_constant, Compiled, FrameSource, XsatInstance,
};
pub use frame::{frame_from_basis, standard_frame, theta_decode, theta_encode, Frame};
pub use gadgets::{
    frame_subterms, gadget_add, gadget_mul, gadget_sub, iota, slope_v2, slope_v3, FrameRefs,
    FrameSubterms,
};
pub use identities::{
    check_commutation, check_identities, random_frame, random_rational, selftest, Commutation,
    SelftestReport,
};
pub use witness::{
    root_from_witness, witness_frame, witness_from_root, witness_from_root_in_frame, Witness,
};

use crate::ringterms::RingError;
use crate::terms::TermError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VsError {
    #[error("basis not orthogonal: {0}")]
    NonOrthogonal(String),
    #[error("constant {0} not allowed without constants")]
    DisallowedConstant(String),
    #[error("not a root: polynomial evaluates to {0}")]
    NotARoot(String),
    #[error("instance carries no compilation record")]
    NotCompiled,
    #[error("witness invalid: {0}")]
    WitnessInvalid(String),
    #[error("decode failure: {0}")]
    DecodeFailure(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error(transparent)]
    Ring(RingError),
    #[error(transparent)]
    Term(#[from] TermError),
}

impl From<RingError> for VsError {
    fn from(e: RingError) -> Self {
        match e {
            RingError::DisallowedConstant(c) => VsError::DisallowedConstant(c),
            e => VsError::Ring(e),
        }
    }
}
