use std::collections::HashMap;

use crate::exactfield::{ProjPoint, Vec3};

use super::{CrossTerm, Node};

#[derive(Clone, Debug)]
pub enum FlatNode {
    Var(usize),
    Affine(Vec3),
    Proj(ProjPoint),
    Cross(usize, usize),
}

/// Hash-consed, topologically ordered node list for one or more terms.
/// Children always precede parents.
#[derive(Clone, Debug)]
pub struct FlatDag {
    pub nodes: Vec<FlatNode>,
    pub vars: Vec<String>,
    pub roots: Vec<usize>,
}

#[derive(Hash, PartialEq, Eq)]
enum Key {
    Var(usize),
    Const(String),
    Cross(usize, usize),
}

impl FlatDag {
    /// `vars` fixes the variable numbering; variables missing from it are appended.
    pub fn new(roots: &[CrossTerm], vars: &[String]) -> Self {
        let mut dag = FlatDag { nodes: Vec::new(), vars: vars.to_vec(), roots: Vec::new() };
        let mut by_ptr: HashMap<usize, usize> = HashMap::new();
        let mut by_key: HashMap<Key, usize> = HashMap::new();
        for r in roots {
            let id = dag.insert(r, &mut by_ptr, &mut by_key);
            dag.roots.push(id);
        }
        dag
    }

    fn insert(
        &mut self,
        t: &CrossTerm,
        by_ptr: &mut HashMap<usize, usize>,
        by_key: &mut HashMap<Key, usize>,
    ) -> usize {
        if let Some(&i) = by_ptr.get(&t.id()) {
            return i;
        }
        let (key, node) = match t.node() {
            Node::Var(name) => {
                let vi = match self.vars.iter().position(|v| v == name) {
                    Some(i) => i,
                    None => {
                        self.vars.push(name.clone());
                        self.vars.len() - 1
                    }
                };
                (Key::Var(vi), FlatNode::Var(vi))
            }
            Node::AffineConst(v) => (Key::Const(v.to_string()), FlatNode::Affine(v.clone())),
            Node::ProjConst(p) => (Key::Const(p.to_string()), FlatNode::Proj(p.clone())),
            Node::Cross(l, r) => {
                let a = self.insert(l, by_ptr, by_key);
                let b = self.insert(r, by_ptr, by_key);
                (Key::Cross(a, b), FlatNode::Cross(a, b))
            }
        };
        let i = *by_key.entry(key).or_insert_with(|| {
            self.nodes.push(node);
            self.nodes.len() - 1
        });
        by_ptr.insert(t.id(), i);
        i
    }

    /// For every node, the set of variable indices it depends on, as a bitmask
    /// over the first 64 variables (wider terms saturate to all-ones).
    pub fn dependency_masks(&self) -> Vec<u64> {
        let mut out: Vec<u64> = Vec::with_capacity(self.nodes.len());
        for n in &self.nodes {
            let m = match n {
                FlatNode::Var(i) if *i < 64 => 1u64 << i,
                FlatNode::Var(_) => u64::MAX,
                FlatNode::Affine(_) | FlatNode::Proj(_) => 0,
                FlatNode::Cross(a, b) => out[*a] | out[*b],
            };
            out.push(m);
        }
        out
    }
}
