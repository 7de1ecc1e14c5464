use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::{FieldError, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vec3 {
    pub x: Scalar,
    pub y: Scalar,
    pub z: Scalar,
}

impl Vec3 {
    pub fn new(x: Scalar, y: Scalar, z: Scalar) -> Self {
        Vec3 { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Vec3::new(x.into(), y.into(), z.into())
    }

    pub fn zero() -> Self {
        Vec3::from_ints(0, 0, 0)
    }

    /// `e₁`, `e₂`, `e₃` for `i = 0, 1, 2`.
    pub fn unit(i: usize) -> Self {
        let mut c = [0, 0, 0];
        c[i] = 1;
        Vec3::from_ints(c[0], c[1], c[2])
    }

    pub fn coords(&self) -> [&Scalar; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn from_coords(c: [Scalar; 3]) -> Self {
        let [x, y, z] = c;
        Vec3 { x, y, z }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    /// `(v₁w₂−v₂w₁, v₂w₀−v₀w₂, v₀w₁−v₁w₀)`
    pub fn cross(&self, w: &Vec3) -> Vec3 {
        Vec3 {
            x: &(&self.y * &w.z) - &(&self.z * &w.y),
            y: &(&self.z * &w.x) - &(&self.x * &w.z),
            z: &(&self.x * &w.y) - &(&self.y * &w.x),
        }
    }

    pub fn dot(&self, w: &Vec3) -> Scalar {
        &(&(&self.x * &w.x) + &(&self.y * &w.y)) + &(&self.z * &w.z)
    }

    pub fn norm_sq(&self) -> Scalar {
        self.dot(self)
    }

    pub fn scale(&self, s: &Scalar) -> Vec3 {
        Vec3 {
            x: &self.x * s,
            y: &self.y * s,
            z: &self.z * s,
        }
    }

    pub fn is_parallel(&self, w: &Vec3) -> bool {
        self.cross(w).is_zero()
    }

    /// `λ` with `self = λ·w`, when `w ≠ 0` and the two are parallel.
    pub fn ratio_to(&self, w: &Vec3) -> Option<Scalar> {
        if w.is_zero() || !self.is_parallel(w) {
            return None;
        }
        let (a, b) = self
            .coords()
            .into_iter()
            .zip(w.coords())
            .find(|(_, b)| !b.is_zero())?;
        Some(a / b)
    }
}

/// `[x, y, z]`
impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.x, self.y, self.z)
    }
}

impl<'a> Add<&'a Vec3> for &'a Vec3 {
    type Output = Vec3;
    fn add(self, w: &'a Vec3) -> Vec3 {
        Vec3::new(&self.x + &w.x, &self.y + &w.y, &self.z + &w.z)
    }
}

impl<'a> Sub<&'a Vec3> for &'a Vec3 {
    type Output = Vec3;
    fn sub(self, w: &'a Vec3) -> Vec3 {
        Vec3::new(&self.x - &w.x, &self.y - &w.y, &self.z - &w.z)
    }
}

impl Neg for &Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-&self.x, -&self.y, -&self.z)
    }
}

/// A point of the projective plane: a nonzero vector up to scaling, stored with
/// its first nonzero coordinate normalized to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjPoint {
    canonical: Vec3,
}

impl ProjPoint {
    pub fn new(v: Vec3) -> Result<Self, FieldError> {
        let lead = v
            .coords()
            .into_iter()
            .find(|c| !c.is_zero())
            .cloned()
            .ok_or(FieldError::ZeroVector)?;
        if lead.is_one() {
            return Ok(ProjPoint { canonical: v });
        }
        let inv = lead.inverse()?;
        Ok(ProjPoint { canonical: v.scale(&inv) })
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        ProjPoint::new(Vec3::from_ints(x, y, z)).expect("nonzero integer triple")
    }

    pub fn vec(&self) -> &Vec3 {
        &self.canonical
    }

    pub fn into_vec(self) -> Vec3 {
        self.canonical
    }

    /// `F(v×w)` for distinct points, `None` (undefined) when they coincide.
    pub fn cross(&self, other: &ProjPoint) -> Option<ProjPoint> {
        let c = self.canonical.cross(&other.canonical);
        if c.is_zero() {
            None
        } else {
            Some(ProjPoint::new(c).expect("nonzero"))
        }
    }

    pub fn is_orthogonal(&self, other: &ProjPoint) -> bool {
        self.canonical.dot(&other.canonical).is_zero()
    }
}

/// `<x : y : z>`
impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = &self.canonical;
        write!(f, "<{} : {} : {}>", v.x, v.y, v.z)
    }
}

pub fn proj_cross(p: &ProjPoint, q: &ProjPoint) -> Option<ProjPoint> {
    p.cross(q)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat3 {
    pub rows: [Vec3; 3],
}

impl Mat3 {
    pub fn from_rows(r0: Vec3, r1: Vec3, r2: Vec3) -> Self {
        Mat3 { rows: [r0, r1, r2] }
    }

    pub fn identity() -> Self {
        Mat3::from_rows(Vec3::unit(0), Vec3::unit(1), Vec3::unit(2))
    }

    pub fn transpose(&self) -> Mat3 {
        let c = |i: usize| {
            Vec3::new(
                self.rows[0].coords()[i].clone(),
                self.rows[1].coords()[i].clone(),
                self.rows[2].coords()[i].clone(),
            )
        };
        Mat3::from_rows(c(0), c(1), c(2))
    }

    pub fn mul_vec(&self, v: &Vec3) -> Vec3 {
        Vec3::new(self.rows[0].dot(v), self.rows[1].dot(v), self.rows[2].dot(v))
    }

    pub fn mul(&self, other: &Mat3) -> Mat3 {
        let t = other.transpose();
        let row = |r: &Vec3| Vec3::new(r.dot(&t.rows[0]), r.dot(&t.rows[1]), r.dot(&t.rows[2]));
        Mat3::from_rows(row(&self.rows[0]), row(&self.rows[1]), row(&self.rows[2]))
    }

    pub fn det(&self) -> Scalar {
        self.rows[0].dot(&self.rows[1].cross(&self.rows[2]))
    }

    /// `O·Oᵀ = I` and `det O = 1`.
    pub fn is_rotation(&self) -> bool {
        self.mul(&self.transpose()) == Mat3::identity() && self.det().is_one()
    }
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.rows[0], self.rows[1], self.rows[2])
    }
}
