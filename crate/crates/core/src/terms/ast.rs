use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::exactfield::{ProjPoint, Vec3};

/// A cross-product term. Nodes are reference counted so compiled terms can
/// share sub-terms; all semantics are those of the tree expansion.
#[derive(Clone, Debug)]
pub struct CrossTerm(Arc<Node>);

#[derive(Debug)]
pub enum Node {
    Var(String),
    AffineConst(Vec3),
    ProjConst(ProjPoint),
    Cross(CrossTerm, CrossTerm),
}

impl CrossTerm {
    pub fn var(name: impl Into<String>) -> Self {
        CrossTerm(Arc::new(Node::Var(name.into())))
    }

    pub fn affine(v: Vec3) -> Self {
        CrossTerm(Arc::new(Node::AffineConst(v)))
    }

    pub fn proj(p: ProjPoint) -> Self {
        CrossTerm(Arc::new(Node::ProjConst(p)))
    }

    pub fn cross(l: &CrossTerm, r: &CrossTerm) -> Self {
        CrossTerm(Arc::new(Node::Cross(l.clone(), r.clone())))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub(crate) fn id(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn ptr_eq(&self, other: &CrossTerm) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn as_var(&self) -> Option<&str> {
        match self.node() {
            Node::Var(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_cross(&self) -> Option<(&CrossTerm, &CrossTerm)> {
        match self.node() {
            Node::Cross(l, r) => Some((l, r)),
            _ => None,
        }
    }

    /// Post-order fold over distinct DAG nodes.
    pub(crate) fn fold<T: Clone>(
        &self,
        memo: &mut HashMap<usize, T>,
        f: &mut impl FnMut(&Node, Option<(&T, &T)>) -> T,
    ) -> T {
        if let Some(v) = memo.get(&self.id()) {
            return v.clone();
        }
        let v = match self.node() {
            Node::Cross(l, r) => {
                let a = l.fold(memo, f);
                let b = r.fold(memo, f);
                f(self.node(), Some((&a, &b)))
            }
            n => f(n, None),
        };
        memo.insert(self.id(), v.clone());
        v
    }

    /// Number of leaves of the tree expansion (saturating).
    pub fn leaf_count(&self) -> u64 {
        self.fold(&mut HashMap::new(), &mut |_, ch| match ch {
            Some((a, b)) => a.saturating_add(*b),
            None => 1,
        })
    }

    /// Number of nodes of the tree expansion (saturating).
    pub fn size(&self) -> u64 {
        self.fold(&mut HashMap::new(), &mut |_, ch| match ch {
            Some((a, b)) => a.saturating_add(*b).saturating_add(1),
            None => 1,
        })
    }

    /// Number of distinct shared nodes.
    pub fn dag_size(&self) -> usize {
        let mut memo = HashMap::new();
        self.fold(&mut memo, &mut |_, _| ());
        memo.len()
    }

    pub fn depth(&self) -> u64 {
        self.fold(&mut HashMap::new(), &mut |_, ch| match ch {
            Some((a, b)) => 1 + (*a).max(*b),
            None => 0,
        })
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.fold(&mut HashMap::new(), &mut |n, ch| match (n, ch) {
            (Node::Var(v), _) => BTreeSet::from([v.clone()]),
            (_, Some((a, b))) => a.union(b).cloned().collect(),
            _ => BTreeSet::new(),
        })
    }

    /// Variables in order of first occurrence, left to right.
    pub fn variables_in_order(&self) -> Vec<String> {
        fn go(t: &CrossTerm, seen: &mut BTreeSet<usize>, out: &mut Vec<String>) {
            if !seen.insert(t.id()) {
                return;
            }
            match t.node() {
                Node::Var(v) if !out.contains(v) => out.push(v.clone()),
                Node::Cross(l, r) => {
                    go(l, seen, out);
                    go(r, seen, out);
                }
                _ => {}
            }
        }
        let mut out = Vec::new();
        go(self, &mut BTreeSet::new(), &mut out);
        out
    }

    /// Leaf occurrences per variable in the tree expansion; this is the degree
    /// of homogeneity of the value in each argument.
    pub fn multidegree(&self) -> BTreeMap<String, u64> {
        self.fold(&mut HashMap::new(), &mut |n, ch| match (n, ch) {
            (Node::Var(v), _) => BTreeMap::from([(v.clone(), 1)]),
            (_, Some((a, b))) => {
                let mut m = a.clone();
                for (k, d) in b {
                    *m.entry(k.clone()).or_insert(0) += d;
                }
                m
            }
            _ => BTreeMap::new(),
        })
    }

    pub fn constant_leaf_count(&self) -> u64 {
        self.fold(&mut HashMap::new(), &mut |n, ch| match (n, ch) {
            (Node::AffineConst(_) | Node::ProjConst(_), _) => 1,
            (_, Some((a, b))) => a + b,
            _ => 0,
        })
    }

    pub fn has_affine_constants(&self) -> bool {
        self.fold(&mut HashMap::new(), &mut |n, ch| match (n, ch) {
            (Node::AffineConst(_), _) => true,
            (_, Some((a, b))) => *a || *b,
            _ => false,
        })
    }

    pub fn has_projective_constants(&self) -> bool {
        self.fold(&mut HashMap::new(), &mut |n, ch| match (n, ch) {
            (Node::ProjConst(_), _) => true,
            (_, Some((a, b))) => *a || *b,
            _ => false,
        })
    }

    /// Replaces variables by terms, preserving sharing.
    pub fn substitute(&self, map: &BTreeMap<String, CrossTerm>) -> CrossTerm {
        fn go(
            t: &CrossTerm,
            map: &BTreeMap<String, CrossTerm>,
            memo: &mut HashMap<usize, CrossTerm>,
        ) -> CrossTerm {
            if let Some(v) = memo.get(&t.id()) {
                return v.clone();
            }
            let out = match t.node() {
                Node::Var(v) => map.get(v).cloned().unwrap_or_else(|| t.clone()),
                Node::Cross(l, r) => {
                    let a = go(l, map, memo);
                    let b = go(r, map, memo);
                    if a.ptr_eq(l) && b.ptr_eq(r) {
                        t.clone()
                    } else {
                        CrossTerm::cross(&a, &b)
                    }
                }
                _ => t.clone(),
            };
            memo.insert(t.id(), out.clone());
            out
        }
        go(self, map, &mut HashMap::new())
    }
}

impl PartialEq for CrossTerm {
    fn eq(&self, other: &Self) -> bool {
        if self.ptr_eq(other) {
            return true;
        }
        match (self.node(), other.node()) {
            (Node::Var(a), Node::Var(b)) => a == b,
            (Node::AffineConst(a), Node::AffineConst(b)) => a == b,
            (Node::ProjConst(a), Node::ProjConst(b)) => a == b,
            (Node::Cross(a, b), Node::Cross(c, d)) => a == c && b == d,
            _ => false,
        }
    }
}

impl Eq for CrossTerm {}

/// Fully parenthesized tree expansion; sharing is not serialized.
impl fmt::Display for CrossTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Var(v) => write!(f, "{v}"),
            Node::AffineConst(v) => write!(f, "{v}"),
            Node::ProjConst(p) => write!(f, "{p}"),
            Node::Cross(l, r) => write!(f, "({l} x {r})"),
        }
    }
}

pub fn print_term(t: &CrossTerm) -> String {
    t.to_string()
}

pub fn multidegree(t: &CrossTerm) -> BTreeMap<String, u64> {
    t.multidegree()
}

/// The term `(((V x (V x W)) x V) x (V x W))`, which vanishes identically.
pub fn vanishing_example() -> CrossTerm {
    let v = CrossTerm::var("V");
    let w = CrossTerm::var("W");
    let vw = CrossTerm::cross(&v, &w);
    let inner = CrossTerm::cross(&CrossTerm::cross(&v, &vw), &v);
    CrossTerm::cross(&inner, &vw)
}

/// Every term with exactly `leaves` variable leaves drawn from `vars`, in a
/// fixed order. Sub-terms are shared across the returned terms.
pub fn enumerate_terms(leaves: usize, vars: &[&str]) -> Vec<CrossTerm> {
    let mut by_size: Vec<Vec<CrossTerm>> = vec![Vec::new()];
    by_size.push(vars.iter().map(|v| CrossTerm::var(*v)).collect());
    for n in 2..=leaves {
        let mut level = Vec::new();
        for k in 1..n {
            for l in &by_size[k] {
                for r in &by_size[n - k] {
                    level.push(CrossTerm::cross(l, r));
                }
            }
        }
        by_size.push(level);
    }
    by_size.swap_remove(leaves.max(1).min(by_size.len() - 1))
}
