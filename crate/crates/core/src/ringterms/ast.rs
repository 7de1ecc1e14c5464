use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactfield::Scalar;

use super::RingError;

/// Polynomial expression over `+`, `−`, `·`, constants and scalar variables.
/// Subtraction is a primitive node, not sugar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingTerm {
    Var(String),
    Const(Scalar),
    Add(Box<RingTerm>, Box<RingTerm>),
    Sub(Box<RingTerm>, Box<RingTerm>),
    Mul(Box<RingTerm>, Box<RingTerm>),
}

/// Which constants an instance may contain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoeffMode {
    /// Constants restricted to `0, 1, −1`.
    Pm1,
    Rational,
}

impl RingTerm {
    pub fn var(name: impl Into<String>) -> Self {
        RingTerm::Var(name.into())
    }

    pub fn int(n: i64) -> Self {
        RingTerm::Const(Scalar::from_int(n))
    }

    pub fn add(a: RingTerm, b: RingTerm) -> Self {
        RingTerm::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: RingTerm, b: RingTerm) -> Self {
        RingTerm::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: RingTerm, b: RingTerm) -> Self {
        RingTerm::Mul(Box::new(a), Box::new(b))
    }

    pub fn children(&self) -> Option<(&RingTerm, &RingTerm)> {
        match self {
            RingTerm::Add(a, b) | RingTerm::Sub(a, b) | RingTerm::Mul(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Node count.
    pub fn size(&self) -> usize {
        match self.children() {
            Some((a, b)) => 1 + a.size() + b.size(),
            None => 1,
        }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            RingTerm::Var(v) => {
                out.insert(v.clone());
            }
            RingTerm::Const(_) => {}
            _ => {
                let (a, b) = self.children().unwrap();
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn constants(&self) -> Vec<&Scalar> {
        match self {
            RingTerm::Var(_) => vec![],
            RingTerm::Const(c) => vec![c],
            _ => {
                let (a, b) = self.children().unwrap();
                let mut v = a.constants();
                v.extend(b.constants());
                v
            }
        }
    }

    /// First constant outside `{0, ±1}`, if any.
    pub fn disallowed_constant(&self, mode: CoeffMode) -> Option<Scalar> {
        if mode == CoeffMode::Rational {
            return None;
        }
        self.constants()
            .into_iter()
            .find(|c| !(c.is_zero() || c.is_one() || (-*c).is_one()))
            .cloned()
    }

    pub fn check_mode(&self, mode: CoeffMode) -> Result<(), RingError> {
        match self.disallowed_constant(mode) {
            Some(c) => Err(RingError::DisallowedConstant(c.to_string())),
            None => Ok(()),
        }
    }

    /// Rewrites each integer constant `n` as a term over `1, −1` of size
    /// `O(log |n|)`; fails on non-integer constants.
    pub fn with_pm1_integers(&self) -> Result<RingTerm, RingError> {
        Ok(match self {
            RingTerm::Var(_) => self.clone(),
            RingTerm::Const(c) => match c.as_integer() {
                Some(n) => pm1_integer(&n),
                None => return Err(RingError::DisallowedConstant(c.to_string())),
            },
            RingTerm::Add(a, b) => RingTerm::add(a.with_pm1_integers()?, b.with_pm1_integers()?),
            RingTerm::Sub(a, b) => RingTerm::sub(a.with_pm1_integers()?, b.with_pm1_integers()?),
            RingTerm::Mul(a, b) => RingTerm::mul(a.with_pm1_integers()?, b.with_pm1_integers()?),
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            RingTerm::Add(..) | RingTerm::Sub(..) => 1,
            RingTerm::Mul(..) => 2,
            _ => 3,
        }
    }
}

/// Binary expansion `n = 2q + r` with `2 = 1 + 1` and `r ∈ {0, ±1}`.
fn pm1_integer(n: &BigInt) -> RingTerm {
    if n.magnitude() <= &BigUint::one() {
        return RingTerm::Const(Scalar::from_bigint(n.clone()));
    }
    let unit = RingTerm::int(n.signum().to_i64().expect("sign"));
    if n.magnitude() == &BigUint::from(2u8) {
        return RingTerm::add(unit.clone(), unit);
    }
    let two = RingTerm::add(RingTerm::int(1), RingTerm::int(1));
    let (q, r): (BigInt, BigInt) = (n / 2, n % 2);
    let t = RingTerm::mul(two, pm1_integer(&q));
    if r.is_zero() {
        t
    } else {
        RingTerm::add(t, RingTerm::Const(Scalar::from_bigint(r)))
    }
}

pub fn eval_poly(p: &RingTerm, x: &BTreeMap<String, Scalar>) -> Result<Scalar, RingError> {
    Ok(match p {
        RingTerm::Var(v) => x.get(v).cloned().ok_or_else(|| RingError::Unbound(v.clone()))?,
        RingTerm::Const(c) => c.clone(),
        RingTerm::Add(a, b) => &eval_poly(a, x)? + &eval_poly(b, x)?,
        RingTerm::Sub(a, b) => &eval_poly(a, x)? - &eval_poly(b, x)?,
        RingTerm::Mul(a, b) => &eval_poly(a, x)? * &eval_poly(b, x)?,
    })
}

/// `Σ pᵢ²`, whose real zeros are the common real zeros of the system.
pub fn sum_of_squares(polys: &[RingTerm]) -> Option<RingTerm> {
    polys
        .iter()
        .map(|p| RingTerm::mul(p.clone(), p.clone()))
        .reduce(RingTerm::add)
}

/// Infix form with the minimal parentheses that reparse to the same tree.
impl fmt::Display for RingTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, op) = match self {
            RingTerm::Var(v) => return write!(f, "{v}"),
            RingTerm::Const(c) => return write!(f, "{c}"),
            RingTerm::Add(a, b) => (a, b, "+"),
            RingTerm::Sub(a, b) => (a, b, "-"),
            RingTerm::Mul(a, b) => (a, b, "*"),
        };
        let p = self.precedence();
        if a.precedence() < p {
            write!(f, "({a})")?;
        } else {
            write!(f, "{a}")?;
        }
        write!(f, " {op} ")?;
        if b.precedence() <= p {
            write!(f, "({b})")
        } else {
            write!(f, "{b}")
        }
    }
}
