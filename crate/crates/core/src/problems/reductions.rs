use crate::ringterms::RingTerm;
use crate::terms::{CrossTerm, Mode, Node};
use crate::vonstaudt::compile_constant_free;

use super::{Kind, ProblemError, ProblemInstance};

/// `s, t ↦ s × t`. For assignments of nonzero vectors, `F s ≠ F t` with both
/// defined holds exactly when `s × t` is nonzero, so witnesses carry over unchanged.
pub fn nonequiv_to_nontriv(s: &CrossTerm, t: &CrossTerm) -> Result<ProblemInstance, ProblemError> {
    ProblemInstance::new(Kind::XNontriv, Mode::Projective, vec![CrossTerm::cross(s, t)])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NontrivSplit {
    Pair(CrossTerm, CrossTerm),
    /// A variable or constant leaf, nontrivial on its own.
    TrivialVariableCase,
}

/// Splits the top-level product of an `XNONTRIV` term.
pub fn nontriv_to_nonequiv(t: &CrossTerm) -> NontrivSplit {
    match t.node() {
        Node::Cross(l, r) => NontrivSplit::Pair(l.clone(), r.clone()),
        _ => NontrivSplit::TrivialVariableCase,
    }
}

/// `t‴_p × A` as a projective `XNONTRIV` instance; it is nontrivial exactly
/// when `p` is not the zero polynomial.
pub fn xnontriv_equation_from_poly(p: &RingTerm) -> Result<ProblemInstance, ProblemError> {
    let x = compile_constant_free(p)?;
    ProblemInstance::new(Kind::XNontriv, Mode::Projective, vec![CrossTerm::cross(&x.lhs, &x.rhs)])
}

/// Extended Euclid over a list: `(g, c)` with `Σ cᵢ aᵢ = g = gcd(a)`, `g ≥ 0`.
pub fn ext_gcd(a: &[i64]) -> (i64, Vec<i64>) {
    let mut g = 0i64;
    let mut c = vec![0i64; a.len()];
    for (i, &ai) in a.iter().enumerate() {
        // g' = x g + y aᵢ
        let (mut r0, mut r1) = (g, ai);
        let (mut x0, mut x1) = (1i64, 0i64);
        let (mut y0, mut y1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0.div_euclid(r1);
            (r0, r1) = (r1, r0 - q * r1);
            (x0, x1) = (x1, x0 - q * x1);
            (y0, y1) = (y1, y0 - q * y1);
        }
        if r0 < 0 {
            (r0, x0, y0) = (-r0, -x0, -y0);
        }
        for cj in c.iter_mut().take(i) {
            *cj *= x0;
        }
        c[i] = y0;
        g = r0;
    }
    (g, c)
}
