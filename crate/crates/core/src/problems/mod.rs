//! The decision problems on cross terms and exact witness transport between them.

mod instance;
mod reductions;
mod xsat;
mod xuvec;

pub use instance::{verify_witness, Constants, Kind, ProblemInstance, Verdict};
pub use reductions::{
    ext_gcd, nonequiv_to_nontriv, nontriv_to_nonequiv, xnontriv_equation_from_poly, NontrivSplit,
};
pub use xsat::{projective_to_affine_xsat, s_prime, AffineXsat};
pub use xuvec::{xuvec_from_nontriv, XuvecTransport};

use num_rational::BigRational;

use crate::exactfield::{FieldError, Scalar};
use crate::terms::TermError;
use crate::vonstaudt::VsError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProblemError {
    #[error("invalid instance: {0}")]
    Invalid(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not constructible: {0}")]
    NotConstructible(String),
    #[error("witness rejected: {0}")]
    Rejected(String),
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Vs(#[from] VsError),
}

/// The rational `n`-th root of `x`, if `x` is rational and has one.
/// Even roots are the nonnegative ones.
pub(crate) fn rational_root(x: &Scalar, n: u32) -> Option<Scalar> {
    if n == 1 {
        return Some(x.clone());
    }
    let q = x.as_rational()?;
    if n % 2 == 0 && q < &BigRational::from_integer(0.into()) {
        return None;
    }
    let (p, d) = (q.numer(), q.denom());
    let (rp, rd) = (p.nth_root(n), d.nth_root(n));
    (rp.pow(n) == *p && rd.pow(n) == *d).then(|| Scalar::from(BigRational::new(rp, rd)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots() {
        assert_eq!(rational_root(&Scalar::ratio(-27, 8), 3), Some(Scalar::ratio(-3, 2)));
        assert_eq!(rational_root(&Scalar::ratio(16, 81), 4), Some(Scalar::ratio(2, 3)));
        assert_eq!(rational_root(&Scalar::from_int(-4), 2), None);
        assert_eq!(rational_root(&Scalar::from_int(2), 3), None);
        assert_eq!(rational_root(&Scalar::from_int(5), 1), Some(Scalar::from_int(5)));
    }
}
