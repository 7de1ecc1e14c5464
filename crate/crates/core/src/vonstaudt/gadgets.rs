use crate::terms::CrossTerm;

use super::Frame;

fn x(a: &CrossTerm, b: &CrossTerm) -> CrossTerm {
    CrossTerm::cross(a, b)
}

/// The five frame points as terms over `A, B, C`, sharing sub-terms.
#[derive(Clone, Debug)]
pub struct FrameSubterms {
    pub v12: CrossTerm,
    pub v2: CrossTerm,
    pub v23: CrossTerm,
    pub v1: CrossTerm,
    pub v3: CrossTerm,
}

pub fn frame_subterms(a: &CrossTerm, b: &CrossTerm, c: &CrossTerm) -> FrameSubterms {
    let v12 = b.clone();
    let v2 = x(&x(a, b), a);
    let v23 = x(c, a);
    let v1 = x(&v2, &v23);
    let v3 = x(&x(&v23, &x(b, &v2)), b);
    FrameSubterms { v12, v2, v23, v1, v3 }
}

/// Frame references used by the gadgets: either constant leaves or the
/// symbolic sub-terms over `A, B, C`. `v13` is always the term `V2 × (V12 × V23)`.
#[derive(Clone, Debug)]
pub struct FrameRefs {
    pub v1: CrossTerm,
    pub v2: CrossTerm,
    pub v3: CrossTerm,
    pub v12: CrossTerm,
    pub v23: CrossTerm,
    pub v13: CrossTerm,
}

impl FrameRefs {
    pub fn constants(f: &Frame) -> Self {
        let c = |p: &crate::exactfield::ProjPoint| CrossTerm::proj(p.clone());
        Self::assemble(c(&f.v1), c(&f.v2), c(&f.v3), c(&f.v12), c(&f.v23))
    }

    /// The sub-terms over `A, B, C` exactly as listed in [`frame_subterms`].
    /// A term may then mention only some of them, and being defined no longer
    /// implies a proper frame: `B = A` is the compiled form of `1 = 0`, and
    /// `A = B` satisfies it.
    pub fn symbolic(a: &CrossTerm, b: &CrossTerm, c: &CrossTerm) -> Self {
        let s = frame_subterms(a, b, c);
        Self::assemble(s.v1, s.v2, s.v3, s.v12, s.v23)
    }

    /// Symbolic references that each contain `G = V3 × V1`, which is defined
    /// only when all five frame sub-terms are. On a proper frame they take
    /// the same values as [`FrameRefs::symbolic`]:
    /// `V2 = V3 × V1`, `V1 = V2 × V3`, `V3 = V1 × V2`,
    /// `V12 = (B × V3) × V3` as `v1 − v2 ⟂ v3`, `V23 = (V23 × V1) × V1` as `v2 − v3 ⟂ v1`.
    pub fn guarded(a: &CrossTerm, b: &CrossTerm, c: &CrossTerm) -> Self {
        let s = frame_subterms(a, b, c);
        let v2 = x(&s.v3, &s.v1);
        let v1 = x(&v2, &s.v3);
        let v3 = x(&s.v1, &v2);
        let v12 = x(&x(&s.v12, &v3), &v3);
        let v23 = x(&x(&s.v23, &v1), &v1);
        Self::assemble(v1, v2, v3, v12, v23)
    }

    fn assemble(
        v1: CrossTerm,
        v2: CrossTerm,
        v3: CrossTerm,
        v12: CrossTerm,
        v23: CrossTerm,
    ) -> Self {
        let v13 = x(&v2, &x(&v12, &v23));
        FrameRefs { v1, v2, v3, v12, v23, v13 }
    }
}

/// `F(v1 − s v3)` from `Θ(s)`.
pub fn slope_v3(s: &CrossTerm, f: &FrameRefs) -> CrossTerm {
    x(&f.v2, &x(&f.v23, s))
}

/// `F(v3 − r v2)` from `Θ(r)`.
pub fn slope_v2(r: &CrossTerm, f: &FrameRefs) -> CrossTerm {
    x(&f.v1, &x(&f.v13, r))
}

/// `Θ(r), Θ(s) ↦ Θ(rs)`.
pub fn gadget_mul(r: &CrossTerm, s: &CrossTerm, f: &FrameRefs) -> CrossTerm {
    x(&f.v3, &x(&slope_v2(r, f), &slope_v3(s, f)))
}

/// `Θ(r), Θ(s) ↦ Θ(r − s)`. The inner product is `F(v1 − (r − s) v2 − s v3)`,
/// projected onto `v3⊥`.
pub fn gadget_sub(r: &CrossTerm, s: &CrossTerm, f: &FrameRefs) -> CrossTerm {
    let w = x(&x(&f.v23, r), &x(&f.v2, &slope_v3(s, f)));
    x(&f.v3, &x(&w, &f.v3))
}

/// `r + s = r − (0 − s)`.
pub fn gadget_add(r: &CrossTerm, s: &CrossTerm, f: &FrameRefs) -> CrossTerm {
    gadget_sub(r, &gadget_sub(&f.v1, s, f), f)
}

/// Maps `F(v1 − r v2 + s v3)` to `Θ(r)`; undefined on the `V2`–`V3` plane.
pub fn iota(w: &CrossTerm, f: &FrameRefs) -> CrossTerm {
    let p = x(w, &f.v3);
    x(&p, &x(&x(&p, &f.v3), &f.v2))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::exactfield::{ProjPoint, Scalar};
    use crate::terms::eval_projective;
    use crate::vonstaudt::{standard_frame, theta_encode};

    fn eval(t: &CrossTerm) -> Option<ProjPoint> {
        eval_projective(t, &BTreeMap::new()).unwrap()
    }

    fn th(r: i64) -> CrossTerm {
        CrossTerm::proj(theta_encode(&Scalar::from_int(r), &standard_frame()))
    }

    #[test]
    fn gadgets_standard_frame() {
        let f = FrameRefs::constants(&standard_frame());
        assert_eq!(eval(&slope_v2(&th(2), &f)), Some(ProjPoint::from_ints(0, -2, 1)));
        assert_eq!(eval(&slope_v3(&th(3), &f)), Some(ProjPoint::from_ints(1, 0, -3)));
        assert_eq!(eval(&gadget_mul(&th(2), &th(3), &f)), Some(ProjPoint::from_ints(1, -6, 0)));
        assert_eq!(eval(&gadget_sub(&th(0), &th(0), &f)), eval(&f.v1));
        assert_eq!(eval(&gadget_add(&th(1), &th(1), &f)), eval(&th(2)));
        assert_eq!(eval(&gadget_sub(&th(2), &th(7), &f)), eval(&th(-5)));
        assert_eq!(eval(&f.v13), Some(ProjPoint::from_ints(1, 0, -1)));
    }

    #[test]
    fn iota_cases() {
        let f = FrameRefs::constants(&standard_frame());
        let w = CrossTerm::proj(ProjPoint::from_ints(1, -2, 3));
        assert_eq!(eval(&iota(&w, &f)), Some(ProjPoint::from_ints(1, -2, 0)));
        assert_eq!(eval(&iota(&th(7), &f)), eval(&th(7)));
        let plane = CrossTerm::proj(ProjPoint::from_ints(0, 1, 1));
        assert_eq!(eval(&iota(&plane, &f)), None);
    }

    #[test]
    fn gadgets_are_total_on_small_grid() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let frames = [standard_frame(), crate::vonstaudt::random_frame(&mut rng), crate::vonstaudt::random_frame(&mut rng)];
        let grid: Vec<Scalar> =
            (-4..=4).flat_map(|n| (1..=3).map(move |d| Scalar::ratio(n, d))).collect();
        for f in &frames {
            let refs = FrameRefs::constants(f);
            let th = |r: &Scalar| CrossTerm::proj(theta_encode(r, f));
            for r in &grid {
                for s in &grid {
                    let want = |v: Scalar| Some(theta_encode(&v, f));
                    assert_eq!(eval(&gadget_mul(&th(r), &th(s), &refs)), want(r * s), "{r}·{s}");
                    assert_eq!(eval(&gadget_sub(&th(r), &th(s), &refs)), want(r - s), "{r}−{s}");
                    assert_eq!(eval(&gadget_add(&th(r), &th(s), &refs)), want(r + s), "{r}+{s}");
                }
            }
        }
    }

    #[test]
    fn frame_subterms_observed_values() {
        let [a, b, c] = ["A", "B", "C"].map(CrossTerm::var);
        let s = frame_subterms(&a, &b, &c);
        let at = |pa, pb, pc| {
            BTreeMap::from([
                ("A".to_string(), pa),
                ("B".to_string(), pb),
                ("C".to_string(), pc),
            ])
        };
        let asg = at(
            ProjPoint::from_ints(1, 0, 0),
            ProjPoint::from_ints(-1, 1, 0),
            ProjPoint::from_ints(0, 1, 1),
        );
        let ev = |t: &CrossTerm, m| eval_projective(t, m).unwrap();
        assert_eq!(ev(&s.v2, &asg), Some(ProjPoint::from_ints(0, 1, 0)));
        assert_eq!(ev(&s.v23, &asg), Some(ProjPoint::from_ints(0, 1, -1)));
        assert_eq!(ev(&s.v1, &asg), Some(ProjPoint::from_ints(1, 0, 0)));
        assert_eq!(ev(&s.v3, &asg), Some(ProjPoint::from_ints(0, 0, 1)));
        assert_eq!(ev(&s.v12, &asg), Some(ProjPoint::from_ints(1, -1, 0)));

        let same = at(
            ProjPoint::from_ints(1, 0, 0),
            ProjPoint::from_ints(1, 0, 0),
            ProjPoint::from_ints(0, 1, 1),
        );
        assert_eq!(ev(&s.v2, &same), None);
        let collinear = at(
            ProjPoint::from_ints(1, 0, 0),
            ProjPoint::from_ints(1, 1, 0),
            ProjPoint::from_ints(1, 2, 0),
        );
        assert!(ev(&s.v2, &collinear).is_some());
        assert_eq!(ev(&s.v3, &collinear), None);
    }

    #[test]
    fn guarded_refs() {
        let [a, b, c] = ["A", "B", "C"].map(CrossTerm::var);
        let g = FrameRefs::guarded(&a, &b, &c);
        let s = FrameRefs::symbolic(&a, &b, &c);
        let ev = |t: &CrossTerm, m| eval_projective(t, m).unwrap();
        let good = BTreeMap::from([
            ("A".to_string(), ProjPoint::from_ints(2, 1, 0)),
            ("B".to_string(), ProjPoint::from_ints(1, -3, 5)),
            ("C".to_string(), ProjPoint::from_ints(0, 4, 1)),
        ]);
        for (x, y) in [(&g.v1, &s.v1), (&g.v2, &s.v2), (&g.v3, &s.v3), (&g.v12, &s.v12), (&g.v23, &s.v23), (&g.v13, &s.v13)] {
            assert!(ev(y, &good).is_some());
            assert_eq!(ev(x, &good), ev(y, &good));
        }
        // V2 = V23 here, so V1 is undefined while V3 is not
        let degenerate = BTreeMap::from([
            ("A".to_string(), ProjPoint::from_ints(1, 1, 0)),
            ("B".to_string(), ProjPoint::from_ints(1, 1, 1)),
            ("C".to_string(), ProjPoint::from_ints(1, 0, 0)),
        ]);
        assert!(ev(&s.v3, &degenerate).is_some());
        assert_eq!(ev(&s.v1, &degenerate), None);
        for t in [&g.v1, &g.v2, &g.v3, &g.v12, &g.v23, &g.v13] {
            assert_eq!(ev(t, &degenerate), None);
        }
        let same = BTreeMap::from([
            ("A".to_string(), ProjPoint::from_ints(1, 0, 0)),
            ("B".to_string(), ProjPoint::from_ints(1, 0, 0)),
            ("C".to_string(), ProjPoint::from_ints(0, 1, 1)),
        ]);
        assert_eq!(ev(&s.v12, &same), ev(&a, &same));
        assert_eq!(ev(&g.v12, &same), None);
    }
}
