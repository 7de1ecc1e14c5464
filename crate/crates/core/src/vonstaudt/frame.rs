use std::fmt;

use crate::exactfield::{ProjPoint, Scalar, Vec3};

use super::VsError;

/// Points derived from a right-handed orthogonal basis `v1, v2, v3`:
/// `Vj = F vj`, `V12 = F(v1 − v2)`, `V23 = F(v2 − v3)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub basis: [Vec3; 3],
    pub v1: ProjPoint,
    pub v2: ProjPoint,
    pub v3: ProjPoint,
    pub v12: ProjPoint,
    pub v23: ProjPoint,
}

pub fn standard_frame() -> Frame {
    frame_from_basis([Vec3::unit(0), Vec3::unit(1), Vec3::unit(2)]).expect("standard basis")
}

/// Left-handed input is negated as a whole, which reverses orientation in three dimensions.
pub fn frame_from_basis(basis: [Vec3; 3]) -> Result<Frame, VsError> {
    let [a, b, c] = &basis;
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return Err(VsError::NonOrthogonal("zero basis vector".into()));
    }
    if !(a.dot(b).is_zero() && b.dot(c).is_zero() && a.dot(c).is_zero()) {
        return Err(VsError::NonOrthogonal(format!("{a}, {b}, {c}")));
    }
    let basis = if a.cross(b).dot(c).signum() < 0 { [-a, -b, -c] } else { basis };
    let point = |v: Vec3| ProjPoint::new(v).expect("nonzero");
    let [a, b, c] = &basis;
    Ok(Frame {
        v1: point(a.clone()),
        v2: point(b.clone()),
        v3: point(c.clone()),
        v12: point(a - b),
        v23: point(b - c),
        basis,
    })
}

impl Frame {
    pub fn v13(&self) -> ProjPoint {
        ProjPoint::new(&self.basis[0] - &self.basis[2]).expect("nonzero")
    }

    /// Frame points in the order `V1, V2, V3, V12, V23`.
    pub fn points(&self) -> [&ProjPoint; 5] {
        [&self.v1, &self.v2, &self.v3, &self.v12, &self.v23]
    }

    /// Recovers a right-handed orthogonal basis realizing the given points.
    /// Fails unless `V1, V2, V3` are pairwise orthogonal and `V12`, `V23`
    /// are spanned by differences of suitably scaled basis vectors.
    pub fn from_points(
        v1: &ProjPoint,
        v2: &ProjPoint,
        v3: &ProjPoint,
        v12: &ProjPoint,
        v23: &ProjPoint,
    ) -> Result<Frame, VsError> {
        let fail = |m: &str| Err(VsError::DecodeFailure(format!("frame reconstruction: {m}")));
        if !(v1.is_orthogonal(v2) && v2.is_orthogonal(v3) && v1.is_orthogonal(v3)) {
            return fail("V1, V2, V3 not pairwise orthogonal");
        }
        let b1 = v1.vec().clone();
        // b2 = λ u2 with b1 − b2 ∥ w, solved from the components of w along b1 and u2
        let rescale = |prev: &Vec3, u: &Vec3, w: &Vec3| -> Option<Vec3> {
            let wp = w.dot(prev);
            let wu = w.dot(u);
            if wp.is_zero() || wu.is_zero() {
                return None;
            }
            let lambda = -(&(&wu * &prev.norm_sq()) / &(&wp * &u.norm_sq()));
            Some(u.scale(&lambda))
        };
        let Some(b2) = rescale(&b1, v2.vec(), v12.vec()) else {
            return fail("V12 not of the form F(v1 - v2)");
        };
        let Some(b3) = rescale(&b2, v3.vec(), v23.vec()) else {
            return fail("V23 not of the form F(v2 - v3)");
        };
        let f = frame_from_basis([b1, b2, b3])?;
        if f.v12 != *v12 || f.v23 != *v23 {
            return fail("difference points inconsistent");
        }
        Ok(f)
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v1={} v2={} v3={}", self.basis[0], self.basis[1], self.basis[2])
    }
}

/// `Θ(r) = F(v1 − r v2)`.
pub fn theta_encode(r: &Scalar, f: &Frame) -> ProjPoint {
    ProjPoint::new(&f.basis[0] - &f.basis[1].scale(r)).expect("v1 and v2 independent")
}

/// Inverse of [`theta_encode`]; `None` when `P` is off the line `v3⊥` or equals `V2`.
pub fn theta_decode(p: &ProjPoint, f: &Frame) -> Option<Scalar> {
    let [b1, b2, b3] = &f.basis;
    let w = p.vec();
    if !w.dot(b3).is_zero() {
        return None;
    }
    let alpha = &w.dot(b1) / &b1.norm_sq();
    if alpha.is_zero() {
        return None;
    }
    let beta = &w.dot(b2) / &b2.norm_sq();
    Some(-(&beta / &alpha))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64, z: i64) -> ProjPoint {
        ProjPoint::from_ints(x, y, z)
    }

    #[test]
    fn standard() {
        let f = standard_frame();
        assert_eq!(f.v1, pt(1, 0, 0));
        assert_eq!(f.v2, pt(0, 1, 0));
        assert_eq!(f.v3, pt(0, 0, 1));
        assert_eq!(f.v12, pt(1, -1, 0));
        assert_eq!(f.v23, pt(0, 1, -1));
        assert_eq!(f.v1.cross(&f.v2), Some(f.v3.clone()));
        assert_eq!(f.v2.cross(&f.v3), Some(f.v1.clone()));
        assert_eq!(f.v3.cross(&f.v1), Some(f.v2.clone()));
    }

    #[test]
    fn scaled_and_left_handed() {
        let f = frame_from_basis([
            Vec3::from_ints(2, 0, 0),
            Vec3::from_ints(0, 3, 0),
            Vec3::from_ints(0, 0, 5),
        ])
        .unwrap();
        assert_eq!(f.v12, pt(2, -3, 0));
        assert_eq!(f.v23, pt(0, 3, -5));

        let g = frame_from_basis([Vec3::unit(0), Vec3::unit(2), Vec3::unit(1)]).unwrap();
        assert_eq!(g.basis[0], Vec3::from_ints(-1, 0, 0));
        assert!(g.basis[0].cross(&g.basis[1]).dot(&g.basis[2]).signum() > 0);
        assert_eq!(g.v1.cross(&g.v2), Some(g.v3.clone()));

        assert!(frame_from_basis([Vec3::unit(0), Vec3::from_ints(1, 1, 0), Vec3::unit(2)]).is_err());
    }

    #[test]
    fn theta() {
        let f = standard_frame();
        assert_eq!(theta_encode(&Scalar::zero(), &f), f.v1);
        assert_eq!(theta_encode(&Scalar::one(), &f), f.v12);
        assert_eq!(theta_encode(&Scalar::from_int(2), &f), pt(1, -2, 0));
        assert_eq!(theta_decode(&pt(1, -5, 0), &f), Some(Scalar::from_int(5)));
        assert_eq!(theta_decode(&f.v2, &f), None);
        assert_eq!(theta_decode(&pt(1, -2, 3), &f), None);
    }

    #[test]
    fn reconstruct_from_points() {
        let f = frame_from_basis([
            Vec3::from_ints(2, 0, 0),
            Vec3::from_ints(0, 3, 0),
            Vec3::from_ints(0, 0, 5),
        ])
        .unwrap();
        let g = Frame::from_points(&f.v1, &f.v2, &f.v3, &f.v12, &f.v23).unwrap();
        assert_eq!(g.points(), f.points());
        for r in -3..4 {
            let r = Scalar::from_int(r);
            assert_eq!(theta_encode(&r, &g), theta_encode(&r, &f));
        }
        assert!(Frame::from_points(&f.v1, &f.v2, &f.v3, &pt(1, 1, 1), &f.v23).is_err());
    }
}
