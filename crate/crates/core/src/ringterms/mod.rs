//! Polynomial expressions: syntax, exact evaluation, dense expansion for small instances.

mod ast;
mod dense;
mod parse;
mod random;

pub use ast::{eval_poly, sum_of_squares, CoeffMode, RingTerm};
pub use dense::{expand_dense, expand_dense_with_limit, DensePoly, DEFAULT_SIZE_LIMIT};
pub use parse::parse_poly;
pub use random::random_ring_term;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unbound variable {0}")]
    Unbound(String),
    #[error("term has {size} nodes, above the expansion limit {limit}")]
    SizeLimit { size: usize, limit: usize },
    #[error("constant {0} not allowed in pm1 mode")]
    DisallowedConstant(String),
}

/// `{"polys": [...], "mode": "pm1" | "rational"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyBatch {
    pub polys: Vec<String>,
    pub mode: CoeffMode,
}

impl PolyBatch {
    pub fn from_terms(polys: &[RingTerm], mode: CoeffMode) -> Self {
        PolyBatch { polys: polys.iter().map(|p| p.to_string()).collect(), mode }
    }

    /// Parses every polynomial and checks constants against the mode.
    pub fn parse(&self) -> Result<Vec<RingTerm>, RingError> {
        self.polys
            .iter()
            .map(|s| {
                let p = parse_poly(s)?;
                p.check_mode(self.mode)?;
                Ok(p)
            })
            .collect()
    }
}
