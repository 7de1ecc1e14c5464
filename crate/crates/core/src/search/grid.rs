use std::cmp::Reverse;
use std::collections::HashSet;

use num_integer::Integer;

use crate::exactfield::{ProjPoint, Scalar, Vec3};

use super::FieldTag;

fn int_triples(n: i64) -> impl Iterator<Item = [i64; 3]> {
    (-n..=n).flat_map(move |a| (-n..=n).flat_map(move |b| (-n..=n).map(move |c| [a, b, c])))
}

/// Small `‖·‖∞`, then small `‖·‖₁`, then lexicographically largest.
fn grid_key(v: &[i64; 3]) -> (i64, i64, Reverse<[i64; 3]>) {
    let inf = v.iter().map(|x| x.abs()).max().unwrap_or(0);
    (inf, v.iter().map(|x| x.abs()).sum(), Reverse(*v))
}

/// Classes `F(a, b, c)` of integer triples with `gcd = 1`, entries bounded by
/// `n` and first nonzero entry positive. Every class appears once, `F(1, 0, 0)` first.
pub fn enumerate_proj_points(n: u32) -> Vec<ProjPoint> {
    integer_proj_triples(n).iter().map(|v| ProjPoint::from_ints(v[0], v[1], v[2])).collect()
}

pub(crate) fn integer_proj_triples(n: u32) -> Vec<[i64; 3]> {
    let mut out: Vec<[i64; 3]> = int_triples(n as i64)
        .filter(|v| v.iter().fold(0i64, |g, x| g.gcd(x)) == 1)
        .filter(|v| v.iter().find(|x| **x != 0).is_some_and(|x| *x > 0))
        .collect();
    out.sort_by_key(grid_key);
    out
}

/// Nonzero integer vectors with entries bounded by `n`. The zero vector is left
/// out: it zeroes every product it enters and never helps a witness.
pub(crate) fn integer_vectors(n: u32) -> Vec<[i64; 3]> {
    let mut out: Vec<[i64; 3]> = int_triples(n as i64).filter(|v| *v != [0, 0, 0]).collect();
    out.sort_by_key(grid_key);
    out
}

/// Grid vectors over `field`: every coordinate is `Σ cᵢ bᵢ` over the field's
/// basis with integer `|cᵢ| ≤ n`. Projective grids keep one representative
/// per class, the first in enumeration order.
pub fn grid_vectors(field: &FieldTag, n: u32, projective: bool) -> Vec<Vec3> {
    if field.radicands.is_empty() {
        let ts = if projective { integer_proj_triples(n) } else { integer_vectors(n) };
        return ts.iter().map(|v| Vec3::from_ints(v[0], v[1], v[2])).collect();
    }
    let basis = field.basis();
    let n = n as i64;
    let mut coeffs: Vec<Vec<i64>> = vec![vec![]];
    for _ in &basis {
        coeffs = coeffs
            .into_iter()
            .flat_map(|c| {
                (-n..=n).map(move |x| {
                    let mut c = c.clone();
                    c.push(x);
                    c
                })
            })
            .collect();
    }
    coeffs.sort_by_key(|c| (c.iter().map(|x| x.abs()).max(), c.iter().map(|x| x.abs()).sum::<i64>(), Reverse(c.clone())));
    let scalars: Vec<Scalar> = coeffs
        .iter()
        .map(|c| c.iter().zip(&basis).fold(Scalar::zero(), |acc, (x, b)| &acc + &(&Scalar::from_int(*x) * b)))
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in &scalars {
        for y in &scalars {
            for z in &scalars {
                let v = Vec3::new(x.clone(), y.clone(), z.clone());
                if v.is_zero() {
                    continue;
                }
                let key = if projective {
                    ProjPoint::new(v.clone()).expect("nonzero").to_string()
                } else {
                    v.to_string()
                };
                if seen.insert(key) {
                    out.push(v);
                }
            }
        }
    }
    out
}
