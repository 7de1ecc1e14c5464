//! Cross-product terms: syntax, affine and projective evaluation, structural measures.

mod ast;
mod dag;
mod eval;
mod parse;

pub use ast::{enumerate_terms, multidegree, print_term, vanishing_example, CrossTerm, Node};
pub use dag::{FlatDag, FlatNode};
pub use eval::{eval_affine, eval_projective, AffineAssignment, Assignment, Mode, ProjAssignment};
pub use parse::{parse_term, parse_term_batch};

use crate::exactfield::FieldError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TermError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("'x' is reserved for the cross operator (byte {pos})")]
    Reserved { pos: usize },
    #[error("unbound variable {0}")]
    Unbound(String),
    #[error("mode mismatch: {0}")]
    ModeMismatch(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}
