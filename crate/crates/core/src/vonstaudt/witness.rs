use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exactfield::{parse_scalar, ProjPoint, Scalar, Vec3};
use crate::ringterms::eval_poly;
use crate::terms::{eval_projective, Assignment, CrossTerm, ProjAssignment};

use super::{
    frame_subterms, iota, standard_frame, theta_decode, theta_encode, Compiled, Frame,
    FrameRefs, FrameSource, VsError, XsatInstance,
};

/// Satisfying assignment, optionally with the ring values it encodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub assignment: Assignment,
    pub roots: Option<BTreeMap<String, Scalar>>,
}

#[derive(Serialize, Deserialize)]
struct WitnessJson {
    assignment: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    roots: Option<BTreeMap<String, String>>,
}

impl Witness {
    pub fn new(assignment: Assignment) -> Self {
        Witness { assignment, roots: None }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let w = WitnessJson {
            assignment: self.assignment.to_text_map(),
            roots: self
                .roots
                .as_ref()
                .map(|r| r.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()),
        };
        serde_json::to_value(w).expect("plain strings")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, VsError> {
        let w: WitnessJson =
            serde_json::from_value(v.clone()).map_err(|e| VsError::Format(e.to_string()))?;
        let roots = match w.roots {
            None => None,
            Some(r) => Some(
                r.into_iter()
                    .map(|(k, v)| Ok((k, parse_scalar(&v)?)))
                    .collect::<Result<_, crate::exactfield::FieldError>>()
                    .map_err(|e| VsError::Format(e.to_string()))?,
            ),
        };
        Ok(Witness { assignment: Assignment::from_text_map(&w.assignment)?, roots })
    }
}

fn compiled(inst: &XsatInstance) -> Result<&Compiled, VsError> {
    inst.compiled.as_ref().ok_or(VsError::NotCompiled)
}

/// Witness for a compiled instance from a root of its polynomial. Instances
/// with a symbolic frame place it on the standard basis.
pub fn witness_from_root(
    inst: &XsatInstance,
    roots: &BTreeMap<String, Scalar>,
) -> Result<Witness, VsError> {
    witness_from_root_in_frame(inst, roots, &standard_frame())
}

/// As [`witness_from_root`], spanning a symbolic frame with
/// `A = F v1`, `B = F(v2 − v1)`, `C = F(v2 + v3)` for the basis of `frame`.
pub fn witness_from_root_in_frame(
    inst: &XsatInstance,
    roots: &BTreeMap<String, Scalar>,
    frame: &Frame,
) -> Result<Witness, VsError> {
    let c = compiled(inst)?;
    let value = eval_poly(&c.poly, roots)?;
    if !value.is_zero() {
        return Err(VsError::NotARoot(value.to_string()));
    }
    let mut m = ProjAssignment::new();
    let f = match &c.frame {
        FrameSource::Constants(f) => f,
        FrameSource::Variables([a, b, cc]) => {
            let [v1, v2, v3] = &frame.basis;
            let p = |v: Vec3| ProjPoint::new(v).expect("nonzero");
            m.insert(a.clone(), p(v1.clone()));
            m.insert(b.clone(), p(v2 - v1));
            m.insert(cc.clone(), p(v2 + v3));
            frame
        }
    };
    for (ring, var) in &c.ring_vars {
        m.insert(var.clone(), theta_encode(&roots[ring], f));
    }
    let roots = c.ring_vars.keys().map(|k| (k.clone(), roots[k].clone())).collect();
    Ok(Witness { assignment: Assignment::Projective(m), roots: Some(roots) })
}

/// The frame a satisfying assignment realizes.
pub fn witness_frame(inst: &XsatInstance, m: &ProjAssignment) -> Result<Frame, VsError> {
    match &compiled(inst)?.frame {
        FrameSource::Constants(f) => Ok(f.clone()),
        FrameSource::Variables(names) => {
            let [a, b, c] = names.clone().map(CrossTerm::var);
            let s = frame_subterms(&a, &b, &c);
            let ev = |t: &CrossTerm| -> Result<ProjPoint, VsError> {
                eval_projective(t, m)?
                    .ok_or_else(|| VsError::DecodeFailure("frame sub-term undefined".into()))
            };
            Frame::from_points(&ev(&s.v1)?, &ev(&s.v2)?, &ev(&s.v3)?, &ev(&s.v12)?, &ev(&s.v23)?)
        }
    }
}

/// Decodes a satisfying assignment into a root: reconstructs the frame, then
/// reads each `Xj = F(v1 − rj v2 + sj v3)` as `rj` through `ι`.
pub fn root_from_witness(
    inst: &XsatInstance,
    w: &Assignment,
) -> Result<BTreeMap<String, Scalar>, VsError> {
    let c = compiled(inst)?;
    inst.check(w).map_err(VsError::WitnessInvalid)?;
    let Assignment::Projective(m) = w else {
        return Err(VsError::WitnessInvalid("affine assignment".into()));
    };
    let f = witness_frame(inst, m)?;
    let refs = FrameRefs::constants(&f);
    let mut roots = BTreeMap::new();
    for (ring, var) in &c.ring_vars {
        let image = eval_projective(&iota(&CrossTerm::proj(m[var].clone()), &refs), &BTreeMap::new())?
            .ok_or_else(|| VsError::DecodeFailure(format!("ι({var}) undefined")))?;
        let r = theta_decode(&image, &f)
            .ok_or_else(|| VsError::DecodeFailure(format!("ι({var}) not an encoded value")))?;
        roots.insert(ring.clone(), r);
    }
    let value = eval_poly(&c.poly, &roots)?;
    if !value.is_zero() {
        return Err(VsError::DecodeFailure(format!("decoded values give {value}, not a root")));
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ringterms::parse_poly;
    use crate::vonstaudt::{compile_constant_free, compile_equation, frame_from_basis};

    fn roots(pairs: &[(&str, Scalar)]) -> BTreeMap<String, Scalar> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn identity_root() {
        let inst = compile_constant_free(&parse_poly("X").unwrap()).unwrap();
        let w = witness_from_root(&inst, &roots(&[("X", Scalar::zero())])).unwrap();
        let Assignment::Projective(m) = &w.assignment else { panic!() };
        assert_eq!(m["X"], ProjPoint::from_ints(1, 0, 0));
        assert_eq!(m["A"], ProjPoint::from_ints(1, 0, 0));
        assert_eq!(m["B"], ProjPoint::from_ints(-1, 1, 0));
        assert_eq!(m["C"], ProjPoint::from_ints(0, 1, 1));
        assert_eq!(inst.check(&w.assignment), Ok(()));
        assert_eq!(root_from_witness(&inst, &w.assignment).unwrap()["X"], Scalar::zero());
    }

    #[test]
    fn sqrt_two() {
        let inst = compile_constant_free(&parse_poly("X*X - 2").unwrap()).unwrap();
        let r2 = Scalar::from_int(2).sqrt().unwrap();
        let w = witness_from_root(&inst, &roots(&[("X", r2.clone())])).unwrap();
        assert_eq!(inst.check(&w.assignment), Ok(()));
        assert_eq!(root_from_witness(&inst, &w.assignment).unwrap()["X"], r2);
        assert!(matches!(
            witness_from_root(&inst, &roots(&[("X", Scalar::one())])),
            Err(VsError::NotARoot(_))
        ));
    }

    #[test]
    fn two_variables_any_frame() {
        let p = parse_poly("(X1 + X2) * X1 - 1").unwrap();
        let inst = compile_constant_free(&p).unwrap();
        let f = frame_from_basis([
            Vec3::from_ints(1, 2, 2),
            Vec3::from_ints(2, 1, -2),
            Vec3::from_ints(2, -2, 1),
        ])
        .unwrap();
        let r = roots(&[("X1", Scalar::one()), ("X2", Scalar::zero())]);
        let w = witness_from_root_in_frame(&inst, &r, &f).unwrap();
        assert_eq!(inst.check(&w.assignment), Ok(()));
        assert_eq!(root_from_witness(&inst, &w.assignment).unwrap(), r);

        let with_consts = compile_equation(&p, &f);
        let w = witness_from_root(&with_consts, &r).unwrap();
        assert_eq!(with_consts.check(&w.assignment), Ok(()));
        assert_eq!(root_from_witness(&with_consts, &w.assignment).unwrap(), r);
    }

    #[test]
    fn off_line_points_decode_through_iota() {
        let inst = compile_constant_free(&parse_poly("X*X - 1").unwrap()).unwrap();
        let w = witness_from_root(&inst, &roots(&[("X", Scalar::from_int(-1))])).unwrap();
        let Assignment::Projective(mut m) = w.assignment else { panic!() };
        // Θ(−1) = F(1, 1, 0); moving along v3 keeps the encoded value
        m.insert("X".into(), ProjPoint::from_ints(1, 1, 5));
        let a = Assignment::Projective(m.clone());
        assert_eq!(inst.check(&a), Ok(()));
        assert_eq!(root_from_witness(&inst, &a).unwrap()["X"], Scalar::from_int(-1));

        m.insert("X".into(), ProjPoint::from_ints(1, 2, 0));
        assert!(matches!(
            root_from_witness(&inst, &Assignment::Projective(m)),
            Err(VsError::WitnessInvalid(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let inst = compile_constant_free(&parse_poly("X*X - 2").unwrap()).unwrap();
        let r2 = Scalar::from_int(2).sqrt().unwrap();
        let w = witness_from_root(&inst, &roots(&[("X", r2)])).unwrap();
        let j = w.to_json();
        assert_eq!(Witness::from_json(&j).unwrap(), w);
        assert!(j["roots"]["X"].as_str().unwrap().contains("sqrt(2)"));
    }
}
