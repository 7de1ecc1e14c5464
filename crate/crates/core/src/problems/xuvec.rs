use std::collections::BTreeMap;

use crate::exactfield::{Mat3, Scalar, Vec3};
use crate::terms::{eval_affine, AffineAssignment, Assignment, CrossTerm};
use crate::vonstaudt::Witness;

use super::{ext_gcd, rational_root, ProblemError};

/// An `XUVEC` witness obtained from an `XNONTRIV` one, with the scalings and
/// the rotation that produced it.
#[derive(Clone, Debug)]
pub struct XuvecTransport {
    pub witness: Witness,
    /// Factor applied to each variable before rotating; absent means 1.
    pub scales: BTreeMap<String, Scalar>,
    /// Orientation preserving orthogonal map sending the normalized value to `e₃`.
    pub rotation: Mat3,
}

/// Turns an affine witness with value `u ≠ 0` into one with value `e₃`.
///
/// `t` is homogeneous of degree `dⱼ` in each variable, so scaling `vⱼ` by
/// `s^(−cⱼ)` with `Σ cⱼ dⱼ = g = gcd(d)` and `s = (u·u)^(1/2g)` divides the
/// value by `|u|`. That root lives in a quadratic tower when `g = 2ᵏ·o` and
/// `u·u` has a rational `o`-th root. A rotation with rows `(â, û×â, û)`,
/// `a = eᵢ × û`, then moves `û` to `e₃`; it commutes with `t` as long as the
/// term has no constant leaves.
pub fn xuvec_from_nontriv(t: &CrossTerm, w: &Witness) -> Result<XuvecTransport, ProblemError> {
    let Assignment::Affine(m) = &w.assignment else {
        return Err(ProblemError::Invalid("XUVEC transport needs an affine witness".into()));
    };
    let u = eval_affine(t, m)?;
    if u.is_zero() {
        return Err(ProblemError::Rejected("value is zero".into()));
    }
    let e3 = Vec3::unit(2);
    if u == e3 {
        return Ok(XuvecTransport { witness: w.clone(), scales: BTreeMap::new(), rotation: Mat3::identity() });
    }
    let degrees: Vec<(String, i64)> =
        t.multidegree().into_iter().filter(|(_, d)| *d > 0).map(|(v, d)| (v, d as i64)).collect();
    if degrees.is_empty() {
        return Err(ProblemError::Unsupported("term has no variable leaf".into()));
    }

    let mut scales = BTreeMap::new();
    let mut m = m.clone();
    let nn = u.norm_sq();
    if !nn.is_one() {
        let ds: Vec<i64> = degrees.iter().map(|(_, d)| *d).collect();
        let (g, cs) = ext_gcd(&ds);
        // one variable suffices when its degree is already the gcd
        let cs = match ds.iter().position(|d| *d == g) {
            Some(i) => (0..ds.len()).map(|j| i64::from(j == i)).collect(),
            None => cs,
        };
        let (k, o) = (g.trailing_zeros(), (g >> g.trailing_zeros()) as u32);
        let mut s = rational_root(&nn, o).ok_or_else(|| {
            ProblemError::NotConstructible(format!(
                "needs a {o}-th root of {nn}, not constructible in quadratic towers"
            ))
        })?;
        for _ in 0..=k {
            s = s.sqrt()?;
        }
        for ((v, _), c) in degrees.iter().zip(cs) {
            if c == 0 {
                continue;
            }
            let lambda = s.powi(-c)?;
            let x = m.get_mut(v).expect("occurring variable is assigned");
            *x = x.scale(&lambda);
            scales.insert(v.clone(), lambda);
        }
    }
    let uh = eval_affine(t, &m)?;
    debug_assert!(uh.norm_sq().is_one());

    let rotation = if uh == e3 {
        Mat3::identity()
    } else {
        if t.constant_leaf_count() > 0 {
            return Err(ProblemError::Unsupported("rotating a term with constant leaves".into()));
        }
        rotation_to_e3(&uh)?
    };
    let m: AffineAssignment = m.into_iter().map(|(k, v)| (k, rotation.mul_vec(&v))).collect();
    let out = eval_affine(t, &m)?;
    if out != e3 {
        return Err(ProblemError::Rejected(format!("transported value {out} is not (0, 0, 1)")));
    }
    Ok(XuvecTransport { witness: Witness::new(Assignment::Affine(m)), scales, rotation })
}

/// Rows `(â, û×â, û)` for a unit vector `û`, `a = eᵢ × û`. Among the admissible
/// `i`, one making `|a|` exact in the current tower is preferred.
fn rotation_to_e3(uh: &Vec3) -> Result<Mat3, ProblemError> {
    let candidates: Vec<Vec3> = (0..3)
        .map(|i| Vec3::unit(i).cross(uh))
        .filter(|a| !a.is_zero())
        .collect();
    let (a, norm) = match candidates.iter().find_map(|a| a.norm_sq().sqrt_exact().map(|r| (a, r))) {
        Some(hit) => hit,
        None => (&candidates[0], candidates[0].norm_sq().sqrt()?),
    };
    let ah = a.scale(&norm.inverse()?);
    Ok(Mat3::from_rows(ah.clone(), uh.cross(&ah), uh.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::parse_term;

    fn wit(pairs: &[(&str, Vec3)]) -> Witness {
        Witness::new(Assignment::Affine(pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()))
    }

    #[test]
    fn already_unit() {
        let t = parse_term("(V x W)").unwrap();
        let w = wit(&[("V", Vec3::unit(0)), ("W", Vec3::unit(1))]);
        let x = xuvec_from_nontriv(&t, &w).unwrap();
        assert_eq!(x.witness, w);
        assert_eq!(x.rotation, Mat3::identity());
    }

    #[test]
    fn halve_first_argument() {
        let t = parse_term("(V x W)").unwrap();
        let x = xuvec_from_nontriv(&t, &wit(&[("V", Vec3::from_ints(2, 0, 0)), ("W", Vec3::unit(1))])).unwrap();
        let Assignment::Affine(m) = &x.witness.assignment else { panic!() };
        assert_eq!(m["V"], Vec3::unit(0));
        assert_eq!(m["W"], Vec3::unit(1));
        assert_eq!(x.scales["V"], Scalar::ratio(1, 2));
    }

    #[test]
    fn value_one_one_zero() {
        let t = parse_term("(V x W)").unwrap();
        // V x W = (1, 1, 0)
        let w = wit(&[("V", Vec3::unit(2)), ("W", Vec3::from_ints(1, -1, 0))]);
        assert_eq!(eval_affine(&t, &{
            let Assignment::Affine(m) = &w.assignment else { panic!() };
            m.clone()
        }).unwrap(), Vec3::from_ints(1, 1, 0));
        let x = xuvec_from_nontriv(&t, &w).unwrap();
        assert!(x.rotation.is_rotation());
        let Assignment::Affine(m) = &x.witness.assignment else { panic!() };
        assert_eq!(eval_affine(&t, m).unwrap(), Vec3::unit(2));
        assert!(m["V"].coords().iter().any(|c| c.as_rational().is_none())
            || m["W"].coords().iter().any(|c| c.as_rational().is_none()));
    }

    #[test]
    fn higher_degree() {
        // degree 2 in V and 1 in W: g = 1
        let t = parse_term("((V x W) x V)").unwrap();
        let w = wit(&[("V", Vec3::from_ints(1, 2, 0)), ("W", Vec3::from_ints(0, 1, 3))]);
        let x = xuvec_from_nontriv(&t, &w).unwrap();
        let Assignment::Affine(m) = &x.witness.assignment else { panic!() };
        assert_eq!(eval_affine(&t, m).unwrap(), Vec3::unit(2));
        assert_eq!(x.scales.len(), 1);
        assert!(x.scales.contains_key("W"));
    }

    #[test]
    fn degree_two_only() {
        // degree 2 in V only: two nested square roots of u·u
        let t = parse_term("((V x [0,0,1]) x V)").unwrap();
        let w = wit(&[("V", Vec3::from_ints(1, 0, 0))]);
        let Assignment::Affine(m0) = &w.assignment else { panic!() };
        assert_eq!(eval_affine(&t, m0).unwrap(), Vec3::from_ints(0, 0, 1));
        let w = wit(&[("V", Vec3::from_ints(2, 0, 0))]);
        let x = xuvec_from_nontriv(&t, &w).unwrap();
        let Assignment::Affine(m) = &x.witness.assignment else { panic!() };
        assert_eq!(eval_affine(&t, m).unwrap(), Vec3::unit(2));
        let w = wit(&[("V", Vec3::from_ints(3, 0, 0))]);
        let x = xuvec_from_nontriv(&t, &w).unwrap();
        let Assignment::Affine(m) = &x.witness.assignment else { panic!() };
        assert_eq!(eval_affine(&t, m).unwrap(), Vec3::unit(2));
    }

    #[test]
    fn cube_root_unavailable() {
        let t = parse_term("((V x (V x [1,0,0])) x V)").unwrap();
        assert_eq!(t.multidegree()["V"], 3);
        let w = wit(&[("V", Vec3::from_ints(0, 2, 1))]);
        let Assignment::Affine(m) = &w.assignment else { panic!() };
        let u = eval_affine(&t, m).unwrap();
        assert!(!u.is_zero());
        match xuvec_from_nontriv(&t, &w) {
            Err(ProblemError::NotConstructible(_)) | Err(ProblemError::Unsupported(_)) => {}
            Ok(x) => {
                let Assignment::Affine(m) = &x.witness.assignment else { panic!() };
                assert_eq!(eval_affine(&t, m).unwrap(), Vec3::unit(2));
            }
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn zero_value() {
        let t = parse_term("(V x W)").unwrap();
        let w = wit(&[("V", Vec3::unit(0)), ("W", Vec3::unit(0))]);
        assert!(matches!(xuvec_from_nontriv(&t, &w), Err(ProblemError::Rejected(_))));
    }
}
