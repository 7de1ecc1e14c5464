use std::collections::BTreeSet;

use crate::exactfield::{ProjPoint, Vec3};
use crate::terms::{eval_affine, AffineAssignment, Assignment, CrossTerm, Mode, ProjAssignment};
use crate::vonstaudt::Witness;

use super::{ext_gcd, rational_root, verify_witness, Kind, ProblemError, ProblemInstance};

/// `((W×(s×W))×s) × (s×(s×W))`. Its value is `(s·w)·|s×w|²·s`: parallel to
/// `s`, of degree 4 in `s` and 3 in `w`, and zero when `w` is orthogonal or
/// parallel to `s`.
pub fn s_prime(s: &CrossTerm, w: &CrossTerm) -> CrossTerm {
    let x = CrossTerm::cross;
    let sw = x(s, w);
    x(&x(&x(w, &sw), s), &x(s, &sw))
}

/// An affine XSAT instance `s′ = D` derived from a projective `s = D`.
#[derive(Clone, Debug)]
pub struct AffineXsat {
    pub instance: ProblemInstance,
    pub source: ProblemInstance,
    /// The fresh variable playing `w`.
    pub w_var: String,
}

pub fn projective_to_affine_xsat(inst: &ProblemInstance) -> Result<AffineXsat, ProblemError> {
    if inst.kind != Kind::Xsat || inst.mode != Mode::Projective {
        return Err(ProblemError::Invalid("expected a projective XSAT instance".into()));
    }
    if inst.terms.iter().any(|t| t.constant_leaf_count() > 0) {
        return Err(ProblemError::Unsupported("constant leaves do not scale with the witness".into()));
    }
    let rhs = inst.xsat_rhs().expect("XSAT instance");
    let Some(d) = rhs.as_var() else {
        return Err(ProblemError::Unsupported("right-hand side is not a variable".into()));
    };
    let used: BTreeSet<String> = inst.variables().into_iter().collect();
    let w_var = std::iter::once("W".to_string())
        .chain((0..).map(|i| format!("W{i}")))
        .find(|n| !used.contains(n))
        .expect("unbounded name supply");
    let lhs = s_prime(&inst.terms[0], &CrossTerm::var(&w_var));
    let instance = ProblemInstance::xsat(lhs, Mode::Affine, Some(d.to_string()))?;
    Ok(AffineXsat { instance, source: inst.clone(), w_var })
}

impl AffineXsat {
    fn designated(&self) -> &str {
        self.instance.designated.as_deref().expect("XSAT instance")
    }

    /// Projective witness to affine witness. With `s′(v, w) = m·v_D`, scaling
    /// `vⱼ` by `αⱼ` and `w` by `β` multiplies the left side by
    /// `Π αⱼ^(4dⱼ) β³` and the right by `α_D`. Taking powers of a `g`-th root of
    /// `m`, `g = gcd(4dⱼ − [j = D], 3)`, balances the two; `g = 3` needs a
    /// rational cube root.
    pub fn forward(&self, w: &Witness) -> Result<Witness, ProblemError> {
        reject_unless(&self.source, w)?;
        let Assignment::Projective(p) = &w.assignment else { unreachable!("verified mode") };
        let mut v: AffineAssignment = p.iter().map(|(k, x)| (k.clone(), x.vec().clone())).collect();
        let d = self.designated().to_string();

        let (wv, m) = candidate_ws()
            .find_map(|c| {
                v.insert(self.w_var.clone(), c.clone());
                let val = eval_affine(&self.instance.terms[0], &v).ok()?;
                let m = val.ratio_to(&v[&d])?;
                (!m.is_zero()).then_some((c, m))
            })
            .expect("some small vector is neither orthogonal nor parallel to s");

        let degrees = self.source.terms[0].multidegree();
        let mut names: Vec<String> = self.source.variables();
        let mut exps: Vec<i64> = names
            .iter()
            .map(|n| 4 * degrees.get(n).copied().unwrap_or(0) as i64 - i64::from(*n == d))
            .collect();
        names.push(self.w_var.clone());
        exps.push(3);
        let (g, c) = ext_gcd(&exps);
        let r = rational_root(&m, g as u32).ok_or_else(|| {
            ProblemError::NotConstructible(format!("needs a cube root of {m}"))
        })?;
        v.insert(self.w_var.clone(), wv);
        for (n, c) in names.iter().zip(c) {
            let x = v.get_mut(n).expect("assigned");
            *x = x.scale(&r.powi(-c)?);
        }
        let out = Witness::new(Assignment::Affine(v));
        reject_unless(&self.instance, &out)?;
        Ok(out)
    }

    /// Affine witness to projective witness: drop `w` and pass to points. A
    /// nonzero `s′` forces every sub-term of `s` to be nonzero, so the
    /// projective value is defined and equals `F v_D`.
    pub fn backward(&self, w: &Witness) -> Result<Witness, ProblemError> {
        reject_unless(&self.instance, w)?;
        let Assignment::Affine(a) = &w.assignment else { unreachable!("verified mode") };
        let p: ProjAssignment = self
            .source
            .variables()
            .into_iter()
            .map(|n| {
                let x = ProjPoint::new(a[&n].clone()).unwrap_or_else(|_| ProjPoint::from_ints(1, 0, 0));
                (n, x)
            })
            .collect();
        let out = Witness::new(Assignment::Projective(p));
        reject_unless(&self.source, &out)?;
        Ok(out)
    }
}

fn reject_unless(inst: &ProblemInstance, w: &Witness) -> Result<(), ProblemError> {
    match verify_witness(inst, w) {
        super::Verdict::Accept => Ok(()),
        super::Verdict::Reject(r) => Err(ProblemError::Rejected(r)),
    }
}

/// Small integer vectors; for any `s ≠ 0` one of the first few is neither
/// orthogonal nor parallel to it.
fn candidate_ws() -> impl Iterator<Item = Vec3> {
    let r = -2i64..=2;
    r.clone()
        .flat_map(move |x| r.clone().flat_map(move |y| (-2i64..=2).map(move |z| (x, y, z))))
        .filter(|&(x, y, z)| (x, y, z) != (0, 0, 0))
        .map(|(x, y, z)| Vec3::from_ints(x, y, z))
}
