//! Exact scalars: arbitrary-precision rationals and elements of quadratic
//! extension towers `Q(√d₁)(√d₂)…` embedded in the reals.
//!
//! Every element is stored at the lowest level of its tower where it lives:
//! a `Quad` node always has a nonzero irrational part. Together with radicands
//! that are verified non-squares, this makes the representation canonical
//! within one tower, so structural comparison decides equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::FieldError;

/// One quadratic step: the field `base(√radicand)`.
#[derive(Debug)]
pub struct Extension {
    base: Tower,
    radicand: Scalar,
    depth: usize,
}

impl Extension {
    pub fn base(&self) -> &Tower {
        &self.base
    }

    pub fn radicand(&self) -> &Scalar {
        &self.radicand
    }
}

/// A chain of quadratic extensions over the rationals. `Tower::rational()` is `Q`.
#[derive(Clone, Debug, Default)]
pub struct Tower(Option<Arc<Extension>>);

impl Tower {
    pub fn rational() -> Self {
        Tower(None)
    }

    pub fn depth(&self) -> usize {
        self.0.as_ref().map_or(0, |e| e.depth)
    }

    pub fn top(&self) -> Option<&Arc<Extension>> {
        self.0.as_ref()
    }

    /// Radicands from the bottom of the chain upwards.
    pub fn radicands(&self) -> Vec<Scalar> {
        let mut out = Vec::new();
        let mut cur = self.clone();
        while let Some(e) = cur.0.clone() {
            out.push(e.radicand.clone());
            cur = e.base.clone();
        }
        out.reverse();
        out
    }

    fn truncate(&self, depth: usize) -> Tower {
        let mut cur = self.clone();
        while cur.depth() > depth {
            cur = cur.0.as_ref().unwrap().base.clone();
        }
        cur
    }

    pub fn is_prefix_of(&self, other: &Tower) -> bool {
        self.depth() <= other.depth() && *self == other.truncate(self.depth())
    }

    /// Extend `self` by `√x`, unless `x` already has a square root here.
    /// Returns the nonnegative root together with the (possibly new) tower.
    pub fn adjoin_sqrt(&self, x: &Scalar) -> Result<(Scalar, Tower), FieldError> {
        let (x, t) = lift(x, self);
        if x.signum() < 0 {
            return Err(FieldError::NegativeRadicand(x.to_string()));
        }
        if let Some(s) = sqrt_in(&x, &t) {
            return Ok((s, t));
        }
        let ext = Arc::new(Extension {
            depth: t.depth() + 1,
            base: t,
            radicand: x,
        });
        let root = Scalar::Quad(Arc::new(QuadExt {
            a: Scalar::zero(),
            b: Scalar::one(),
            ext: ext.clone(),
        }));
        Ok((root, Tower(Some(ext))))
    }

    /// Smallest tower in which both `self` and `other` embed.
    pub fn join(&self, other: &Tower) -> Tower {
        if other.is_prefix_of(self) {
            return self.clone();
        }
        if self.is_prefix_of(other) {
            return other.clone();
        }
        let mut t = self.clone();
        for d in other.radicands() {
            let (_, next) = t.adjoin_sqrt(&d).expect("radicands of a tower are positive");
            t = next;
        }
        t
    }
}

impl PartialEq for Tower {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (None, None) => true,
            (Some(a), Some(b)) => {
                Arc::ptr_eq(a, b)
                    || (a.depth == b.depth && a.radicand.same_repr(&b.radicand) && a.base == b.base)
            }
            _ => false,
        }
    }
}

#[derive(Debug)]
pub struct QuadExt {
    a: Scalar,
    b: Scalar,
    ext: Arc<Extension>,
}

/// An exact real number: a reduced rational or `a + b·√d` over a smaller tower.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Quad(Arc<QuadExt>),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar::Rational(BigRational::from_integer(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Rational(BigRational::new(num.into(), den.into()))
    }

    /// Builds `a + b·√d`, adjoining `√d` over the join of the operand towers.
    pub fn quad(a: &Scalar, b: &Scalar, d: &Scalar) -> Result<Scalar, FieldError> {
        let t = a.tower().join(&b.tower()).join(&d.tower());
        let (root, _) = t.adjoin_sqrt(d)?;
        Ok(a + &(b * &root))
    }

    pub fn tower(&self) -> Tower {
        match self {
            Scalar::Rational(_) => Tower::rational(),
            Scalar::Quad(q) => Tower(Some(q.ext.clone())),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Quad(_) => None,
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    /// Sign in the real embedding where every radical is positive.
    pub fn signum(&self) -> i8 {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    0
                } else if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Scalar::Quad(q) => {
                let sa = q.a.signum();
                let sb = q.b.signum();
                if sa == 0 || sa == sb {
                    return sb;
                }
                let n = &(&q.a * &q.a) - &(&(&q.b * &q.b) * &q.ext.radicand);
                if n.signum() > 0 {
                    sa
                } else {
                    sb
                }
            }
        }
    }

    pub fn abs(&self) -> Scalar {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        Ok(self * &other.inverse()?)
    }

    pub fn inverse(&self) -> Result<Scalar, FieldError> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    Err(FieldError::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(r.recip()))
                }
            }
            Scalar::Quad(q) => {
                let norm = &(&q.a * &q.a) - &(&(&q.b * &q.b) * &q.ext.radicand);
                let inv = norm.inverse()?;
                Ok(make(&q.a * &inv, -&(&q.b * &inv), &q.ext))
            }
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn powi(&self, e: i64) -> Result<Scalar, FieldError> {
        let p = self.pow(e.unsigned_abs() as u32);
        if e < 0 {
            p.inverse()
        } else {
            Ok(p)
        }
    }

    /// Nonnegative square root, adjoining a new radical if necessary.
    pub fn sqrt(&self) -> Result<Scalar, FieldError> {
        Ok(self.tower().adjoin_sqrt(self)?.0)
    }

    /// Square root inside the element's own tower, if it exists there.
    pub fn sqrt_exact(&self) -> Option<Scalar> {
        sqrt_in(self, &self.tower())
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Quad(q) => q.a.to_f64() + q.b.to_f64() * q.ext.radicand.to_f64().sqrt(),
        }
    }

    /// Structural equality of representations; sound for equality only when
    /// both sides live in compatible towers.
    fn same_repr(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            (Scalar::Quad(p), Scalar::Quad(q)) => {
                Arc::ptr_eq(p, q)
                    || (Tower(Some(p.ext.clone())) == Tower(Some(q.ext.clone()))
                        && p.a.same_repr(&q.a)
                        && p.b.same_repr(&q.b))
            }
            _ => false,
        }
    }
}

fn make(a: Scalar, b: Scalar, ext: &Arc<Extension>) -> Scalar {
    if b.is_zero() {
        a
    } else {
        Scalar::Quad(Arc::new(QuadExt { a, b, ext: ext.clone() }))
    }
}

/// Coordinates of `x` with respect to the top extension `ext` of a tower that contains it.
fn split(x: &Scalar, ext: &Arc<Extension>) -> (Scalar, Scalar) {
    match x {
        Scalar::Quad(q) if Tower(Some(q.ext.clone())) == Tower(Some(ext.clone())) => {
            (q.a.clone(), q.b.clone())
        }
        _ => (x.clone(), Scalar::zero()),
    }
}

/// Re-expresses `y` inside a tower extending `t`.
fn lift(y: &Scalar, t: &Tower) -> (Scalar, Tower) {
    match y {
        Scalar::Rational(_) => (y.clone(), t.clone()),
        Scalar::Quad(q) => {
            let ty = Tower(Some(q.ext.clone()));
            if ty.is_prefix_of(t) {
                return (y.clone(), t.clone());
            }
            if t.is_prefix_of(&ty) {
                return (y.clone(), ty);
            }
            let (a, t1) = lift(&q.a, t);
            let (b, t2) = lift(&q.b, &t1);
            let (d, t3) = lift(&q.ext.radicand, &t2);
            let (s, t4) = t3
                .adjoin_sqrt(&d)
                .expect("radicands of a tower are positive");
            (&a + &(&b * &s), t4)
        }
    }
}

fn align(x: &Scalar, y: &Scalar) -> (Scalar, Scalar, Tower) {
    let tx = x.tower();
    let ty = y.tower();
    if ty.is_prefix_of(&tx) {
        (x.clone(), y.clone(), tx)
    } else if tx.is_prefix_of(&ty) {
        (x.clone(), y.clone(), ty)
    } else {
        let (y2, t) = lift(y, &tx);
        (x.clone(), y2, t)
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Nonnegative square root of `x` inside tower `t` (which must contain `x`).
fn sqrt_in(x: &Scalar, t: &Tower) -> Option<Scalar> {
    if x.is_zero() {
        return Some(Scalar::zero());
    }
    if x.signum() < 0 {
        return None;
    }
    let Some(ext) = t.top() else {
        return x.as_rational().and_then(rational_sqrt).map(Scalar::Rational);
    };
    let base = &ext.base;
    let d = &ext.radicand;
    let (a, b) = split(x, ext);
    if b.is_zero() {
        if let Some(p) = sqrt_in(&a, base) {
            return Some(p);
        }
        let q2 = &a / d;
        return sqrt_in(&q2, base).map(|q| make(Scalar::zero(), q, ext));
    }
    // (p + q√d)² = a + b√d  ⇔  p² + q²d = a, 2pq = b
    let n = &(&a * &a) - &(&(&b * &b) * d);
    let s = sqrt_in(&n, base)?;
    let half = Scalar::ratio(1, 2);
    for p2 in [&(&a + &s) * &half, &(&a - &s) * &half] {
        if let Some(p) = sqrt_in(&p2, base) {
            if p.is_zero() {
                continue;
            }
            let q = &b / &(&p * &Scalar::from_int(2));
            let r = make(p, q, ext);
            return Some(if r.signum() < 0 { -&r } else { r });
        }
    }
    None
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            _ => {
                let tx = self.tower();
                let ty = other.tower();
                if tx.is_prefix_of(&ty) || ty.is_prefix_of(&tx) {
                    self.same_repr(other)
                } else {
                    (self - other).is_zero()
                }
            }
        }
    }
}

impl Eq for Scalar {}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            _ => (self - other).signum().cmp(&0),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (self, rhs) {
            return Scalar::Rational(a + b);
        }
        let (x, y, t) = align(self, rhs);
        let ext = t.top().expect("non-rational operand");
        let (a1, b1) = split(&x, ext);
        let (a2, b2) = split(&y, ext);
        make(&a1 + &a2, &b1 + &b2, ext)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (self, rhs) {
            return Scalar::Rational(a - b);
        }
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (self, rhs) {
            return Scalar::Rational(a * b);
        }
        let (x, y, t) = align(self, rhs);
        let ext = t.top().expect("non-rational operand");
        let (a1, b1) = split(&x, ext);
        let (a2, b2) = split(&y, ext);
        let re = &(&a1 * &a2) + &(&(&b1 * &b2) * &ext.radicand);
        let im = &(&a1 * &b2) + &(&a2 * &b1);
        make(re, im, ext)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::checked_div`] otherwise.
    fn div(self, rhs: &'a Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Quad(q) => make(-&q.a, -&q.b, &q.ext),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rational(r)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::from_bigint(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Quad(q) => write!(f, "({} + {} * sqrt({}))", q.a, q.b, q.ext.radicand),
        }
    }
}

/// Binary operator for [`scalar_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn scalar_arith(a: &Scalar, op: ArithOp, b: &Scalar) -> Result<Scalar, FieldError> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2() -> Scalar {
        Scalar::from_int(2).sqrt().unwrap()
    }

    #[test]
    fn rational_basics() {
        let r = &Scalar::ratio(1, 3) + &Scalar::ratio(1, 6);
        assert_eq!(r, Scalar::ratio(1, 2));
        assert_eq!(r.to_string(), "1/2");
        assert_eq!(Scalar::ratio(4, -8).to_string(), "-1/2");
    }

    #[test]
    fn conjugates_multiply_to_rational() {
        let one = Scalar::one();
        let s = sqrt2();
        let p = &(&one + &s) * &(&one - &s);
        assert_eq!(p, Scalar::from_int(-1));
        assert!(p.is_rational_repr());
        assert_eq!(&s * &s, Scalar::from_int(2));
    }

    #[test]
    fn perfect_squares_do_not_extend() {
        assert_eq!(Scalar::ratio(9, 4).sqrt().unwrap(), Scalar::ratio(3, 2));
        assert_eq!(Scalar::from_int(8).sqrt().unwrap(), &Scalar::from_int(2) * &sqrt2());
        assert!(Scalar::from_int(-1).sqrt().is_err());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            scalar_arith(&Scalar::one(), ArithOp::Div, &Scalar::zero()),
            Err(FieldError::DivisionByZero)
        );
    }

    #[test]
    fn inverse_in_extension() {
        let x = &Scalar::from_int(3) + &sqrt2();
        let y = x.inverse().unwrap();
        assert_eq!(&x * &y, Scalar::one());
    }

    #[test]
    fn sign_of_extension_elements() {
        let s = sqrt2();
        assert_eq!((&Scalar::from_int(1) - &s).signum(), -1);
        assert_eq!((&Scalar::ratio(3, 2) - &s).signum(), 1);
        assert_eq!((&Scalar::ratio(7, 5) - &s).signum(), -1);
        assert!(Scalar::ratio(141, 100) < s && s < Scalar::ratio(142, 100));
    }

    #[test]
    fn nested_tower_square_roots() {
        // √(3 + 2√2) = 1 + √2 lives in Q(√2) already
        let s = sqrt2();
        let x = &Scalar::from_int(3) + &(&Scalar::from_int(2) * &s);
        let r = x.sqrt().unwrap();
        assert_eq!(r, &Scalar::one() + &s);
        assert_eq!(r.tower().depth(), 1);
        // √√2 needs a second level
        let q = s.sqrt().unwrap();
        assert_eq!(q.tower().depth(), 2);
        assert_eq!(&(&q * &q) * &(&q * &q), Scalar::from_int(2));
    }

    #[test]
    fn incompatible_towers_are_joined() {
        let s2 = sqrt2();
        let s3 = Scalar::from_int(3).sqrt().unwrap();
        let s6 = Scalar::from_int(6).sqrt().unwrap();
        assert_eq!(&s2 * &s3, s6);
        let sum = &s2 + &s3;
        assert_eq!(&sum * &sum, &Scalar::from_int(5) + &(&Scalar::from_int(2) * &s6));
        // √2 arising independently in a different tower compares equal
        let t = Tower::rational().adjoin_sqrt(&Scalar::from_int(3)).unwrap().1;
        let (s2b, _) = t.adjoin_sqrt(&Scalar::from_int(2)).unwrap();
        assert_eq!(s2b, s2);
    }

    #[test]
    fn display_nests() {
        let s = sqrt2();
        assert_eq!(s.to_string(), "(0 + 1 * sqrt(2))");
        let q = s.sqrt().unwrap();
        assert_eq!(q.to_string(), "(0 + 1 * sqrt((0 + 1 * sqrt(2))))");
    }

    impl Scalar {
        fn is_rational_repr(&self) -> bool {
            matches!(self, Scalar::Rational(_))
        }
    }
}
