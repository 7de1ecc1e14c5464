use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::exactfield::{Scalar, Tower};

/// The coordinate field of a search grid: `Q` or `Q(√d₁, √d₂, …)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FieldTag {
    pub radicands: Vec<BigInt>,
}

impl FieldTag {
    pub fn rational() -> Self {
        FieldTag::default()
    }

    /// `1` followed by the products of subsets of the adjoined roots; a
    /// `Q`-basis of the field.
    pub fn basis(&self) -> Vec<Scalar> {
        let mut out = vec![Scalar::one()];
        let mut tower = Tower::rational();
        for d in &self.radicands {
            let (r, t) = tower.adjoin_sqrt(&Scalar::from(d.clone())).expect("validated radicand");
            tower = t;
            let more: Vec<Scalar> = out.iter().map(|b| b * &r).collect();
            out.extend(more);
        }
        out
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicands.is_empty() {
            return f.write_str("Q");
        }
        let ds: Vec<String> = self.radicands.iter().map(|d| d.to_string()).collect();
        write!(f, "Qsqrt:{}", ds.join(","))
    }
}

impl FromStr for FieldTag {
    type Err = String;

    /// `Q`, `Qsqrt:D` or `Qsqrt:D1,D2,…` with each `Dᵢ` a positive integer
    /// whose root is not already in the field.
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldTag::rational());
        }
        let rest = s
            .strip_prefix("Qsqrt:")
            .ok_or_else(|| format!("unknown field tag {s:?}; expected Q or Qsqrt:D"))?;
        let mut radicands = Vec::new();
        let mut tower = Tower::rational();
        for part in rest.split(',') {
            let d: BigInt = part.trim().parse().map_err(|_| format!("bad radicand {part:?}"))?;
            if !d.is_positive() || d.sqrt().pow(2) == d {
                return Err(format!("radicand {d} must be a positive non-square"));
            }
            let (_, t) = tower.adjoin_sqrt(&Scalar::from(d.clone())).map_err(|e| e.to_string())?;
            if t.depth() == tower.depth() {
                return Err(format!("√{d} already lies in the field"));
            }
            tower = t;
            radicands.push(d);
        }
        Ok(FieldTag { radicands })
    }
}
