use std::collections::BTreeMap;
use std::fmt;

use crate::exactfield::Scalar;

use super::{RingError, RingTerm};

pub const DEFAULT_SIZE_LIMIT: usize = 24;

/// Sum of monomials over a sorted variable list.
/// Invariant: no stored coefficient is zero; `vars` is sorted and duplicate free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensePoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl DensePoly {
    pub fn zero() -> Self {
        DensePoly { vars: Vec::new(), terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = DensePoly::zero();
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    pub fn var(name: &str) -> Self {
        DensePoly {
            vars: vec![name.to_string()],
            terms: BTreeMap::from([(vec![1], Scalar::one())]),
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Monomials in ascending exponent-vector order, exponents indexed like `vars()`.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Scalar)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exps: &[(&str, u32)]) -> Scalar {
        let mut e = vec![0; self.vars.len()];
        for (name, k) in exps {
            match self.vars.iter().position(|v| v == name) {
                Some(i) => e[i] = *k,
                None if *k == 0 => {}
                None => return Scalar::zero(),
            }
        }
        self.terms.get(&e).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn reindex(&self, vars: &[String]) -> BTreeMap<Vec<u32>, Scalar> {
        if self.vars == vars {
            return self.terms.clone();
        }
        let pos: Vec<usize> =
            self.vars.iter().map(|v| vars.binary_search(v).expect("superset")).collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut f = vec![0; vars.len()];
                for (i, k) in e.iter().enumerate() {
                    f[pos[i]] = *k;
                }
                (f, c.clone())
            })
            .collect()
    }

    fn union_vars(&self, other: &DensePoly) -> Vec<String> {
        let mut v: Vec<String> = self.vars.iter().chain(&other.vars).cloned().collect();
        v.sort();
        v.dedup();
        v
    }

    fn combine(&self, other: &DensePoly, sign: bool) -> DensePoly {
        let vars = self.union_vars(other);
        let mut terms = self.reindex(&vars);
        for (e, c) in other.reindex(&vars) {
            let slot = terms.entry(e).or_insert_with(Scalar::zero);
            *slot = if sign { &*slot + &c } else { &*slot - &c };
        }
        terms.retain(|_, c| !c.is_zero());
        DensePoly { vars, terms }
    }

    pub fn add(&self, other: &DensePoly) -> DensePoly {
        self.combine(other, true)
    }

    pub fn sub(&self, other: &DensePoly) -> DensePoly {
        self.combine(other, false)
    }

    pub fn mul(&self, other: &DensePoly) -> DensePoly {
        let vars = self.union_vars(other);
        let a = self.reindex(&vars);
        let b = other.reindex(&vars);
        let mut terms: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let prod = ca * cb;
                let slot = terms.entry(e).or_insert_with(Scalar::zero);
                *slot = &*slot + &prod;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        DensePoly { vars, terms }
    }

    pub fn eval(&self, x: &BTreeMap<String, Scalar>) -> Result<Scalar, RingError> {
        let vals: Vec<&Scalar> = self
            .vars
            .iter()
            .map(|v| x.get(v).ok_or_else(|| RingError::Unbound(v.clone())))
            .collect::<Result<_, _>>()?;
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (v, k) in vals.iter().zip(e) {
                if *k > 0 {
                    m = &m * &v.pow(*k);
                }
            }
            acc = &acc + &m;
        }
        Ok(acc)
    }
}

impl fmt::Display for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = self
                .vars
                .iter()
                .zip(e)
                .filter(|(_, k)| **k > 0)
                .map(|(v, k)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{c}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

pub fn expand_dense(p: &RingTerm) -> Result<DensePoly, RingError> {
    expand_dense_with_limit(p, DEFAULT_SIZE_LIMIT)
}

pub fn expand_dense_with_limit(p: &RingTerm, limit: usize) -> Result<DensePoly, RingError> {
    let size = p.size();
    if size > limit {
        return Err(RingError::SizeLimit { size, limit });
    }
    Ok(expand(p))
}

fn expand(p: &RingTerm) -> DensePoly {
    match p {
        RingTerm::Var(v) => DensePoly::var(v),
        RingTerm::Const(c) => DensePoly::constant(c.clone()),
        RingTerm::Add(a, b) => expand(a).add(&expand(b)),
        RingTerm::Sub(a, b) => expand(a).sub(&expand(b)),
        RingTerm::Mul(a, b) => expand(a).mul(&expand(b)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ringterms::parse_poly;

    #[test]
    fn expansions() {
        let p = expand_dense(&parse_poly("X*X - 2").unwrap()).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coefficient(&[("X", 2)]), Scalar::one());
        assert_eq!(p.coefficient(&[]), Scalar::from_int(-2));

        let q = expand_dense(&parse_poly("(X - 1) * (X + 1)").unwrap()).unwrap();
        assert_eq!(q.to_string(), "X^2 + -1");
        assert!(expand_dense(&parse_poly("X - X").unwrap()).unwrap().is_zero());
        assert!(expand_dense(&parse_poly("(X + Y) * (X - Y) - (X * X - Y * Y)").unwrap())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn size_limit() {
        let big = parse_poly(&vec!["X"; 13].join(" + ")).unwrap();
        assert_eq!(big.size(), 25);
        assert!(matches!(expand_dense(&big), Err(RingError::SizeLimit { size: 25, limit: 24 })));
        assert!(expand_dense_with_limit(&big, 25).is_ok());
    }
}
