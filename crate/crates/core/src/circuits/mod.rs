//! Scalar circuits for cross terms and randomized identity testing.

mod circuit;
mod pit;

pub use circuit::{coordinatize, degree_bound, eval_circuit, sos, Circuit, Gate, InputId};
pub use pit::{pit_random, sample_half_width, PitConfig, PitVerdict};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CircuitError {
    #[error("unbound input {0}")]
    Unbound(String),
    #[error("expected {expected} outputs, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}
