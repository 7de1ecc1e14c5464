use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::exactfield::Scalar;
use crate::ringterms::{CoeffMode, RingTerm};
use crate::terms::{eval_affine, eval_projective, Assignment, CrossTerm, Mode};

use super::{
    gadget_add, gadget_mul, gadget_sub, iota, theta_encode, Frame, FrameRefs, VsError,
};

/// Where the gadgets take their frame from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrameSource {
    /// Fixed points, appearing as constant leaves.
    Constants(Frame),
    /// Names of the variables `A, B, C` spanning the frame.
    Variables([String; 3]),
}

/// Bookkeeping that links a compiled instance back to its polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Compiled {
    pub poly: RingTerm,
    /// Ring variable to term variable; differs only where a name is reserved.
    pub ring_vars: BTreeMap<String, String>,
    pub frame: FrameSource,
}

/// Cross product equation `lhs = rhs`. Projectively both sides must be defined
/// and equal; affinely they must be equal and nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XsatInstance {
    pub lhs: CrossTerm,
    pub rhs: CrossTerm,
    pub mode: Mode,
    pub constants: bool,
    pub vars: Vec<String>,
    pub compiled: Option<Compiled>,
}

impl XsatInstance {
    pub fn new(lhs: CrossTerm, rhs: CrossTerm, mode: Mode) -> Self {
        let mut vars = lhs.variables_in_order();
        for v in rhs.variables_in_order() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        let constants = lhs.constant_leaf_count() + rhs.constant_leaf_count() > 0;
        XsatInstance { lhs, rhs, mode, constants, vars, compiled: None }
    }

    /// `Err(reason)` when the assignment does not satisfy the equation.
    pub fn check(&self, a: &Assignment) -> Result<(), String> {
        match (self.mode, a) {
            (Mode::Projective, Assignment::Projective(m)) => {
                let l = eval_projective(&self.lhs, m).map_err(|e| e.to_string())?;
                let r = eval_projective(&self.rhs, m).map_err(|e| e.to_string())?;
                match (l, r) {
                    (Some(l), Some(r)) if l == r => Ok(()),
                    (Some(_), Some(_)) => Err("wrong value".into()),
                    _ => Err("undefined sub-term".into()),
                }
            }
            (Mode::Affine, Assignment::Affine(m)) => {
                let l = eval_affine(&self.lhs, m).map_err(|e| e.to_string())?;
                let r = eval_affine(&self.rhs, m).map_err(|e| e.to_string())?;
                if r.is_zero() {
                    Err("zero designated value".into())
                } else if l != r {
                    Err("wrong value".into())
                } else {
                    Ok(())
                }
            }
            (m, _) => Err(format!("assignment mode differs from {m} instance")),
        }
    }
}

fn fresh(base: &str, taken: &BTreeSet<String>) -> String {
    if !taken.contains(base) && base != "x" {
        return base.to_string();
    }
    (0..).map(|i| format!("{base}{i}")).find(|n| !taken.contains(n)).expect("unbounded")
}

/// Identity except for `x`, which is reserved for the cross operator.
fn ring_var_names(p: &RingTerm) -> BTreeMap<String, String> {
    let vars = p.variables();
    vars.iter()
        .map(|v| (v.clone(), if v == "x" { fresh(v, &vars) } else { v.clone() }))
        .collect()
}

/// Structural translation of `p`; `leaf` and `constant` supply the images of
/// variables and constants.
fn translate(
    p: &RingTerm,
    f: &FrameRefs,
    leaf: &mut dyn FnMut(&str) -> CrossTerm,
    constant: &mut dyn FnMut(&Scalar) -> Result<CrossTerm, VsError>,
) -> Result<CrossTerm, VsError> {
    Ok(match p {
        RingTerm::Var(v) => leaf(v),
        RingTerm::Const(c) => constant(c)?,
        RingTerm::Add(a, b) => {
            gadget_add(&translate(a, f, leaf, constant)?, &translate(b, f, leaf, constant)?, f)
        }
        RingTerm::Sub(a, b) => {
            gadget_sub(&translate(a, f, leaf, constant)?, &translate(b, f, leaf, constant)?, f)
        }
        RingTerm::Mul(a, b) => {
            gadget_mul(&translate(a, f, leaf, constant)?, &translate(b, f, leaf, constant)?, f)
        }
    })
}

fn theta_constants(frame: &Frame) -> impl FnMut(&Scalar) -> Result<CrossTerm, VsError> + '_ {
    let mut memo: Vec<(Scalar, CrossTerm)> = Vec::new();
    move |c| {
        if let Some((_, t)) = memo.iter().find(|(k, _)| k == c) {
            return Ok(t.clone());
        }
        let t = CrossTerm::proj(theta_encode(c, frame));
        memo.push((c.clone(), t.clone()));
        Ok(t)
    }
}

/// `t_p` over the given frame: variables stay variables, a constant `c`
/// becomes the point `Θ(c)`.
pub fn compile_with_constants(p: &RingTerm, frame: &Frame) -> CrossTerm {
    let names = ring_var_names(p);
    let refs = FrameRefs::constants(frame);
    let mut leaves: HashMap<String, CrossTerm> = HashMap::new();
    translate(
        p,
        &refs,
        &mut |v| leaves.entry(v.to_string()).or_insert_with(|| CrossTerm::var(&names[v])).clone(),
        &mut theta_constants(frame),
    )
    .expect("every constant is encodable")
}

/// `t_p(ι(X1), …, ι(Xn)) = V1` with the frame as constants.
pub fn compile_equation(p: &RingTerm, frame: &Frame) -> XsatInstance {
    let names = ring_var_names(p);
    let refs = FrameRefs::constants(frame);
    let mut leaves: HashMap<String, CrossTerm> = HashMap::new();
    let lhs = translate(
        p,
        &refs,
        &mut |v| {
            leaves
                .entry(v.to_string())
                .or_insert_with(|| iota(&CrossTerm::var(&names[v]), &refs))
                .clone()
        },
        &mut theta_constants(frame),
    )
    .expect("every constant is encodable");
    let mut inst = XsatInstance::new(lhs, refs.v1.clone(), Mode::Projective);
    inst.vars = names.values().cloned().collect();
    inst.compiled =
        Some(Compiled { poly: p.clone(), ring_vars: names, frame: FrameSource::Constants(frame.clone()) });
    inst
}

/// Frame variable names `A, B, C`, renamed when they clash with ring variables.
fn frame_var_names(ring: &BTreeMap<String, String>) -> [String; 3] {
    let mut taken: BTreeSet<String> = ring.values().cloned().collect();
    ["A", "B", "C"].map(|b| {
        let n = fresh(b, &taken);
        taken.insert(n.clone());
        n
    })
}

struct Symbolic {
    names: BTreeMap<String, String>,
    frame_vars: [String; 3],
    refs: FrameRefs,
}

/// Integer constants are first spelled out with `±1`; other constants are rejected.
fn symbolic(p: &RingTerm) -> Result<(RingTerm, Symbolic), VsError> {
    let p = p.with_pm1_integers()?;
    p.check_mode(CoeffMode::Pm1)?;
    let names = ring_var_names(&p);
    let frame_vars = frame_var_names(&names);
    let [a, b, c] = frame_vars.clone().map(CrossTerm::var);
    let refs = FrameRefs::guarded(&a, &b, &c);
    Ok((p, Symbolic { names, frame_vars, refs }))
}

fn pm1_constants(refs: &FrameRefs) -> impl FnMut(&Scalar) -> Result<CrossTerm, VsError> + '_ {
    let mut minus_one: Option<CrossTerm> = None;
    move |c| {
        if c.is_zero() {
            Ok(refs.v1.clone())
        } else if c.is_one() {
            Ok(refs.v12.clone())
        } else if (-c).is_one() {
            Ok(minus_one.get_or_insert_with(|| gadget_sub(&refs.v1, &refs.v12, refs)).clone())
        } else {
            Err(VsError::DisallowedConstant(c.to_string()))
        }
    }
}

/// `t″_p(X1, …, Xn; A, B, C)`: no constant leaves, frame taken from `A, B, C`.
pub fn compile_frame_free(p: &RingTerm) -> Result<(CrossTerm, [String; 3]), VsError> {
    let (p, s) = symbolic(p)?;
    let mut leaves: HashMap<String, CrossTerm> = HashMap::new();
    let t = translate(
        &p,
        &s.refs,
        &mut |v| leaves.entry(v.to_string()).or_insert_with(|| CrossTerm::var(&s.names[v])).clone(),
        &mut pm1_constants(&s.refs),
    )?;
    Ok((t, s.frame_vars))
}

/// `t‴_p := t″_p(ι(X1), …, ι(Xn); A, B, C) = A`.
pub fn compile_constant_free(poly: &RingTerm) -> Result<XsatInstance, VsError> {
    let (p, s) = symbolic(poly)?;
    let mut leaves: HashMap<String, CrossTerm> = HashMap::new();
    let lhs = translate(
        &p,
        &s.refs,
        &mut |v| {
            leaves
                .entry(v.to_string())
                .or_insert_with(|| iota(&CrossTerm::var(&s.names[v]), &s.refs))
                .clone()
        },
        &mut pm1_constants(&s.refs),
    )?;
    let a = CrossTerm::var(&s.frame_vars[0]);
    let mut inst = XsatInstance::new(lhs, a, Mode::Projective);
    inst.vars = s.names.values().cloned().chain(s.frame_vars.iter().cloned()).collect();
    inst.compiled = Some(Compiled {
        poly: poly.clone(),
        ring_vars: s.names,
        frame: FrameSource::Variables(s.frame_vars),
    });
    Ok(inst)
}

/// Largest tree-size contribution of a single ring-term node to `t‴_p`, so
/// that `size(t‴_p) ≤ K · size(p)`. Each gadget contains its operands exactly
/// once in the tree expansion, which makes the bound additive.
pub fn size_constant() -> u64 {
    let [a, b, c] = ["A", "B", "C"].map(CrossTerm::var);
    let f = FrameRefs::guarded(&a, &b, &c);
    let r = CrossTerm::var("R");
    let s = CrossTerm::var("S");
    let leaf_costs = [
        iota(&r, &f).size(),
        f.v1.size(),
        f.v12.size(),
        gadget_sub(&f.v1, &f.v12, &f).size(),
    ];
    let op_costs = [gadget_add(&r, &s, &f), gadget_sub(&r, &s, &f), gadget_mul(&r, &s, &f)]
        .map(|g| g.size() - 2);
    leaf_costs.into_iter().chain(op_costs).max().expect("nonempty")
}
