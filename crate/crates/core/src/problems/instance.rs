use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactfield::Vec3;
use crate::terms::{eval_affine, eval_projective, parse_term, Assignment, CrossTerm, Mode};
use crate::vonstaudt::{Witness, XsatInstance};

use super::ProblemError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Kind {
    XNontriv,
    XUvec,
    XNonequiv,
    Xsat,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::XNontriv => "XNONTRIV",
            Kind::XUvec => "XUVEC",
            Kind::XNonequiv => "XNONEQUIV",
            Kind::Xsat => "XSAT",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Constants {
    Allowed,
    Forbidden,
}

/// One of the decision problems on cross terms.
///
/// - `XNONTRIV`: one term that is nonzero (affine) or defined (projective).
/// - `XUVEC`: one term equal to `(0, 0, 1)`; affine only.
/// - `XNONEQUIV`: two terms, both defined and different; projective only.
/// - `XSAT`: one term equal to the designated variable, nonzero in the affine
///   case, or two terms `[lhs, rhs]` with `rhs` in the designated role.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemInstance {
    pub kind: Kind,
    pub mode: Mode,
    pub constants: Constants,
    pub terms: Vec<CrossTerm>,
    pub designated: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject(String),
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Verdict::Accept => serde_json::json!({"verdict": "accept"}),
            Verdict::Reject(r) => serde_json::json!({"verdict": "reject", "reason": r}),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accept => write!(f, "accept"),
            Verdict::Reject(r) => write!(f, "reject: {r}"),
        }
    }
}

impl ProblemInstance {
    pub fn new(kind: Kind, mode: Mode, terms: Vec<CrossTerm>) -> Result<Self, ProblemError> {
        let constants = if terms.iter().any(|t| t.constant_leaf_count() > 0) {
            Constants::Allowed
        } else {
            Constants::Forbidden
        };
        let inst = ProblemInstance { kind, mode, constants, terms, designated: None };
        inst.validate()?;
        Ok(inst)
    }

    /// XSAT with `lhs = designated`, defaulting to the first variable of `lhs`.
    pub fn xsat(lhs: CrossTerm, mode: Mode, designated: Option<String>) -> Result<Self, ProblemError> {
        let designated = match designated {
            Some(d) => d,
            None => lhs
                .variables_in_order()
                .into_iter()
                .next()
                .ok_or_else(|| ProblemError::Invalid("XSAT term without variables".into()))?,
        };
        let constants =
            if lhs.constant_leaf_count() > 0 { Constants::Allowed } else { Constants::Forbidden };
        let inst = ProblemInstance {
            kind: Kind::Xsat,
            mode,
            constants,
            terms: vec![lhs],
            designated: Some(designated),
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<(), ProblemError> {
        let bad = |m: String| Err(ProblemError::Invalid(m));
        let arity = match self.kind {
            Kind::XNonequiv => 2..=2,
            Kind::Xsat => 1..=2,
            _ => 1..=1,
        };
        if !arity.contains(&self.terms.len()) {
            return bad(format!("{} takes {:?} terms, got {}", self.kind, arity, self.terms.len()));
        }
        match (self.kind, self.mode) {
            (Kind::XUvec, Mode::Projective) => return bad("XUVEC is affine".into()),
            (Kind::XNonequiv, Mode::Affine) => return bad("XNONEQUIV is projective".into()),
            _ => {}
        }
        if self.kind == Kind::Xsat && self.terms.len() == 1 && self.designated.is_none() {
            return bad("XSAT needs a designated variable".into());
        }
        if self.kind != Kind::Xsat && self.designated.is_some() {
            return bad(format!("{} has no designated variable", self.kind));
        }
        for t in &self.terms {
            if self.constants == Constants::Forbidden && t.constant_leaf_count() > 0 {
                return bad("constant leaf in constant-free instance".into());
            }
            match self.mode {
                Mode::Affine if t.has_projective_constants() => {
                    return bad("projective constant in affine instance".into())
                }
                Mode::Projective if t.has_affine_constants() => {
                    return bad("affine constant in projective instance".into())
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Variables of all terms and the designated variable, in first-occurrence order.
    pub fn variables(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        let extra = self.designated.iter().cloned();
        for v in self.terms.iter().flat_map(|t| t.variables_in_order()).chain(extra) {
            if !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }

    /// The XSAT right-hand side as a term.
    pub fn xsat_rhs(&self) -> Option<CrossTerm> {
        if self.kind != Kind::Xsat {
            return None;
        }
        match (&self.designated, self.terms.get(1)) {
            (_, Some(r)) => Some(r.clone()),
            (Some(d), None) => Some(CrossTerm::var(d)),
            (None, None) => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut j = serde_json::json!({
            "kind": self.kind,
            "mode": self.mode,
            "constants": self.constants,
            "terms": self.terms.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        });
        if let Some(d) = &self.designated {
            j["designated"] = serde_json::Value::String(d.clone());
        }
        j
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, ProblemError> {
        #[derive(Deserialize)]
        struct J {
            kind: Kind,
            mode: Mode,
            constants: Constants,
            terms: Vec<String>,
            #[serde(default)]
            designated: Option<String>,
        }
        let j: J = serde_json::from_value(v.clone()).map_err(|e| ProblemError::Format(e.to_string()))?;
        let terms = j.terms.iter().map(|s| parse_term(s)).collect::<Result<Vec<_>, _>>()?;
        let inst = ProblemInstance {
            kind: j.kind,
            mode: j.mode,
            constants: j.constants,
            terms,
            designated: j.designated,
        };
        inst.validate()?;
        Ok(inst)
    }
}

impl From<&XsatInstance> for ProblemInstance {
    fn from(x: &XsatInstance) -> Self {
        let constants = if x.constants { Constants::Allowed } else { Constants::Forbidden };
        let (terms, designated) = match x.rhs.as_var() {
            Some(v) => (vec![x.lhs.clone()], Some(v.to_string())),
            None => (vec![x.lhs.clone(), x.rhs.clone()], None),
        };
        ProblemInstance { kind: Kind::Xsat, mode: x.mode, constants, terms, designated }
    }
}

/// Exact check of the instance's defining predicate.
pub fn verify_witness(inst: &ProblemInstance, w: &Witness) -> Verdict {
    match check(inst, &w.assignment) {
        Ok(()) => Verdict::Accept,
        Err(r) => Verdict::Reject(r),
    }
}

fn check(inst: &ProblemInstance, a: &Assignment) -> Result<(), String> {
    inst.validate().map_err(|e| e.to_string())?;
    if a.mode() != inst.mode {
        return Err(format!("{} assignment for {} instance", a.mode(), inst.mode));
    }
    if let Some(v) = inst.variables().into_iter().find(|v| !assigned(a, v)) {
        return Err(format!("unbound variable {v}"));
    }
    match a {
        Assignment::Affine(m) => {
            let ev = |t: &CrossTerm| eval_affine(t, m).map_err(|e| e.to_string());
            let v0 = ev(&inst.terms[0])?;
            match inst.kind {
                Kind::XNontriv if v0.is_zero() => Err("value is zero".into()),
                Kind::XUvec if v0 != Vec3::unit(2) => Err(format!("value {v0} is not (0, 0, 1)")),
                Kind::Xsat => {
                    let r = ev(&inst.xsat_rhs().expect("validated"))?;
                    if r.is_zero() {
                        Err("zero designated value".into())
                    } else if v0 != r {
                        Err(format!("value {v0} differs from {r}"))
                    } else {
                        Ok(())
                    }
                }
                _ => Ok(()),
            }
        }
        Assignment::Projective(m) => {
            let ev = |t: &CrossTerm| {
                eval_projective(t, m)
                    .map_err(|e| e.to_string())?
                    .ok_or_else(|| "undefined sub-term".to_string())
            };
            let v0 = ev(&inst.terms[0])?;
            match inst.kind {
                Kind::XNonequiv if v0 == ev(&inst.terms[1])? => Err("terms agree".into()),
                Kind::Xsat => {
                    let r = ev(&inst.xsat_rhs().expect("validated"))?;
                    if v0 != r {
                        Err(format!("value {v0} differs from {r}"))
                    } else {
                        Ok(())
                    }
                }
                _ => Ok(()),
            }
        }
    }
}

fn assigned(a: &Assignment, v: &str) -> bool {
    match a {
        Assignment::Affine(m) => m.contains_key(v),
        Assignment::Projective(m) => m.contains_key(v),
    }
}
