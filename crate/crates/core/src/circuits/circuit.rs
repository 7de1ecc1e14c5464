use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;

use crate::exactfield::Scalar;
use crate::ringterms::DensePoly;
use crate::terms::{CrossTerm, Node};

use super::CircuitError;

const COORDS: [&str; 3] = ["x", "y", "z"];

/// Scalar input `var.coord`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InputId {
    pub var: String,
    pub coord: u8,
}

impl InputId {
    pub fn new(var: impl Into<String>, coord: u8) -> Self {
        InputId { var: var.into(), coord }
    }
}

impl fmt::Display for InputId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.var, COORDS[self.coord as usize])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gate {
    Input(InputId),
    Const(Scalar),
    Add(usize, usize),
    Sub(usize, usize),
    Mul(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum GateKey {
    Input(InputId),
    Const(String),
    Op(u8, usize, usize),
}

/// Straight-line program over `+`, `−`, `·`. Operands always precede the gate
/// that uses them, and structurally identical gates are stored once.
#[derive(Clone, Debug, Default)]
pub struct Circuit {
    gates: Vec<Gate>,
    outputs: Vec<usize>,
    index: HashMap<GateKey, usize>,
}

impl PartialEq for Circuit {
    fn eq(&self, other: &Self) -> bool {
        self.gates == other.gates && self.outputs == other.outputs
    }
}

impl Circuit {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    pub fn set_outputs(&mut self, outputs: Vec<usize>) {
        assert!(outputs.iter().all(|&o| o < self.gates.len()), "output out of range");
        self.outputs = outputs;
    }

    pub fn node_count(&self) -> usize {
        self.gates.len()
    }

    fn intern(&mut self, key: GateKey, gate: Gate) -> usize {
        if let Some(&i) = self.index.get(&key) {
            return i;
        }
        self.gates.push(gate);
        let i = self.gates.len() - 1;
        self.index.insert(key, i);
        i
    }

    pub fn input(&mut self, id: InputId) -> usize {
        self.intern(GateKey::Input(id.clone()), Gate::Input(id))
    }

    pub fn constant(&mut self, c: Scalar) -> usize {
        self.intern(GateKey::Const(c.to_string()), Gate::Const(c))
    }

    fn op(&mut self, tag: u8, a: usize, b: usize) -> usize {
        assert!(a < self.gates.len() && b < self.gates.len(), "operand out of range");
        let gate = match tag {
            0 => Gate::Add(a, b),
            1 => Gate::Sub(a, b),
            _ => Gate::Mul(a, b),
        };
        self.intern(GateKey::Op(tag, a, b), gate)
    }

    pub fn add(&mut self, a: usize, b: usize) -> usize {
        self.op(0, a, b)
    }

    pub fn sub(&mut self, a: usize, b: usize) -> usize {
        self.op(1, a, b)
    }

    pub fn mul(&mut self, a: usize, b: usize) -> usize {
        self.op(2, a, b)
    }

    pub fn inputs(&self) -> Vec<&InputId> {
        self.gates
            .iter()
            .filter_map(|g| match g {
                Gate::Input(id) => Some(id),
                _ => None,
            })
            .collect()
    }

    /// Total-degree bound per gate: max over `+`/`−`, sum over `·`.
    pub fn gate_degrees(&self) -> Vec<u64> {
        let mut d: Vec<u64> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let v = match *g {
                Gate::Input(_) => 1,
                Gate::Const(_) => 0,
                Gate::Add(a, b) | Gate::Sub(a, b) => d[a].max(d[b]),
                Gate::Mul(a, b) => d[a].saturating_add(d[b]),
            };
            d.push(v);
        }
        d
    }

    /// Largest degree bound among the outputs.
    pub fn degree_bound(&self) -> u64 {
        let d = self.gate_degrees();
        self.outputs.iter().map(|&o| d[o]).max().unwrap_or(0)
    }

    fn eval_with<T, I, K>(&self, input: I, konst: K) -> Result<Vec<T>, CircuitError>
    where
        T: Clone,
        for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
        I: Fn(&InputId) -> Option<T>,
        K: Fn(&Scalar) -> T,
    {
        let mut v: Vec<T> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let x = match g {
                Gate::Input(id) => input(id).ok_or_else(|| CircuitError::Unbound(id.to_string()))?,
                Gate::Const(c) => konst(c),
                Gate::Add(a, b) => &v[*a] + &v[*b],
                Gate::Sub(a, b) => &v[*a] - &v[*b],
                Gate::Mul(a, b) => &v[*a] * &v[*b],
            };
            v.push(x);
        }
        Ok(self.outputs.iter().map(|&o| v[o].clone()).collect())
    }

    pub fn eval(&self, point: &BTreeMap<InputId, Scalar>) -> Result<Vec<Scalar>, CircuitError> {
        self.eval_with(|id| point.get(id).cloned(), |c| c.clone())
    }

    pub fn has_integer_constants(&self) -> bool {
        self.gates.iter().all(|g| !matches!(g, Gate::Const(c) if c.as_integer().is_none()))
    }

    /// Integer evaluation; requires [`Circuit::has_integer_constants`].
    pub fn eval_integers(&self, point: &BTreeMap<InputId, BigInt>) -> Result<Vec<BigInt>, CircuitError> {
        self.eval_with(|id| point.get(id).cloned(), |c| c.as_integer().expect("integer constant"))
    }

    /// Coefficient-exact expansion of every output.
    pub fn expand_outputs(&self) -> Vec<DensePoly> {
        let mut v: Vec<DensePoly> = Vec::with_capacity(self.gates.len());
        let needed = self.reachable();
        for (i, g) in self.gates.iter().enumerate() {
            if !needed[i] {
                v.push(DensePoly::zero());
                continue;
            }
            let p = match g {
                Gate::Input(id) => DensePoly::var(&id.to_string()),
                Gate::Const(c) => DensePoly::constant(c.clone()),
                Gate::Add(a, b) => v[*a].add(&v[*b]),
                Gate::Sub(a, b) => v[*a].sub(&v[*b]),
                Gate::Mul(a, b) => v[*a].mul(&v[*b]),
            };
            v.push(p);
        }
        self.outputs.iter().map(|&o| v[o].clone()).collect()
    }

    fn reachable(&self) -> Vec<bool> {
        let mut r = vec![false; self.gates.len()];
        for &o in &self.outputs {
            r[o] = true;
        }
        for i in (0..self.gates.len()).rev() {
            if !r[i] {
                continue;
            }
            if let Gate::Add(a, b) | Gate::Sub(a, b) | Gate::Mul(a, b) = self.gates[i] {
                r[a] = true;
                r[b] = true;
            }
        }
        r
    }

    /// One gate per line as `id op lhs rhs`, after an `outputs` header.
    pub fn dump(&self) -> String {
        let outs: Vec<String> = self.outputs.iter().map(|o| o.to_string()).collect();
        let mut s = format!("outputs {}\n", outs.join(" "));
        for (i, g) in self.gates.iter().enumerate() {
            let line = match g {
                Gate::Input(id) => format!("{i} input {id}"),
                Gate::Const(c) => format!("{i} const {c}"),
                Gate::Add(a, b) => format!("{i} add {a} {b}"),
                Gate::Sub(a, b) => format!("{i} sub {a} {b}"),
                Gate::Mul(a, b) => format!("{i} mul {a} {b}"),
            };
            s.push_str(&line);
            s.push('\n');
        }
        s
    }
}

/// Three coordinate outputs computing the affine value of `t`; each cross
/// node costs nine gates and shared sub-terms are translated once.
pub fn coordinatize(t: &CrossTerm) -> Result<Circuit, CircuitError> {
    if t.has_projective_constants() {
        return Err(CircuitError::ModeMismatch("projective constant in affine coordinatization".into()));
    }
    let mut c = Circuit::new();
    let mut memo: HashMap<usize, [usize; 3]> = HashMap::new();
    let out = coord(t, &mut c, &mut memo);
    c.set_outputs(out.to_vec());
    Ok(c)
}

fn coord(t: &CrossTerm, c: &mut Circuit, memo: &mut HashMap<usize, [usize; 3]>) -> [usize; 3] {
    if let Some(v) = memo.get(&t.id()) {
        return *v;
    }
    let out = match t.node() {
        Node::Var(v) => [0, 1, 2].map(|k| c.input(InputId::new(v.as_str(), k))),
        Node::AffineConst(v) => v.coords().map(|s| c.constant(s.clone())),
        Node::ProjConst(_) => unreachable!("checked"),
        Node::Cross(l, r) => {
            let a = coord(l, c, memo);
            let b = coord(r, c, memo);
            let mut comp = |i: usize, j: usize| {
                let p = c.mul(a[i], b[j]);
                let q = c.mul(a[j], b[i]);
                c.sub(p, q)
            };
            [comp(1, 2), comp(2, 0), comp(0, 1)]
        }
    };
    memo.insert(t.id(), out);
    out
}

/// Single output `Σ oᵢ²` over the outputs of `c`.
pub fn sos(c: &Circuit) -> Result<Circuit, CircuitError> {
    if c.outputs.len() != 3 {
        return Err(CircuitError::Arity { expected: 3, found: c.outputs.len() });
    }
    let mut s = c.clone();
    let sq: Vec<usize> = c.outputs.iter().map(|&o| s.mul(o, o)).collect();
    let ab = s.add(sq[0], sq[1]);
    let out = s.add(ab, sq[2]);
    s.set_outputs(vec![out]);
    Ok(s)
}

pub fn eval_circuit(c: &Circuit, point: &BTreeMap<InputId, Scalar>) -> Result<Vec<Scalar>, CircuitError> {
    c.eval(point)
}

pub fn degree_bound(c: &Circuit) -> u64 {
    c.degree_bound()
}
