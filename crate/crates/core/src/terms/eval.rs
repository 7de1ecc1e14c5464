use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::exactfield::{parse_proj, parse_vec3, ProjPoint, Vec3};

use super::{CrossTerm, Node, TermError};

pub type AffineAssignment = BTreeMap<String, Vec3>;
pub type ProjAssignment = BTreeMap<String, ProjPoint>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Affine,
    Projective,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Affine => "affine",
            Mode::Projective => "projective",
        })
    }
}

/// Values for the variables of a term, in one of the two semantics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Assignment {
    Affine(AffineAssignment),
    Projective(ProjAssignment),
}

impl Assignment {
    pub fn mode(&self) -> Mode {
        match self {
            Assignment::Affine(_) => Mode::Affine,
            Assignment::Projective(_) => Mode::Projective,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Assignment::Affine(m) => m.len(),
            Assignment::Projective(m) => m.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `name -> text` with vectors as `[x, y, z]` and points as `<x : y : z>`.
    pub fn to_text_map(&self) -> BTreeMap<String, String> {
        match self {
            Assignment::Affine(m) => m.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
            Assignment::Projective(m) => {
                m.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
            }
        }
    }

    /// Inverse of [`Assignment::to_text_map`]; the bracket style picks the mode.
    pub fn from_text_map(map: &BTreeMap<String, String>) -> Result<Self, TermError> {
        let projective = map.values().next().is_some_and(|v| v.trim_start().starts_with('<'));
        if projective {
            map.iter()
                .map(|(k, v)| Ok((k.clone(), parse_proj(v)?)))
                .collect::<Result<_, TermError>>()
                .map(Assignment::Projective)
        } else {
            map.iter()
                .map(|(k, v)| Ok((k.clone(), parse_vec3(v)?)))
                .collect::<Result<_, TermError>>()
                .map(Assignment::Affine)
        }
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.to_text_map().into_iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Bottom-up value in `F³`; each shared node is evaluated once.
pub fn eval_affine(t: &CrossTerm, a: &AffineAssignment) -> Result<Vec3, TermError> {
    fn go(
        t: &CrossTerm,
        a: &AffineAssignment,
        memo: &mut HashMap<usize, Vec3>,
    ) -> Result<Vec3, TermError> {
        if let Some(v) = memo.get(&t.id()) {
            return Ok(v.clone());
        }
        let v = match t.node() {
            Node::Var(name) => {
                a.get(name).cloned().ok_or_else(|| TermError::Unbound(name.clone()))?
            }
            Node::AffineConst(v) => v.clone(),
            Node::ProjConst(p) => {
                return Err(TermError::ModeMismatch(format!(
                    "projective constant {p} in affine evaluation"
                )))
            }
            Node::Cross(l, r) => go(l, a, memo)?.cross(&go(r, a, memo)?),
        };
        memo.insert(t.id(), v.clone());
        Ok(v)
    }
    go(t, a, &mut HashMap::new())
}

/// Projective value, or `Ok(None)` when some sub-product multiplies a point
/// with itself. Evaluation stops at the first undefined sub-term.
pub fn eval_projective(t: &CrossTerm, a: &ProjAssignment) -> Result<Option<ProjPoint>, TermError> {
    check_projective(t, a)?;
    fn go(
        t: &CrossTerm,
        a: &ProjAssignment,
        memo: &mut HashMap<usize, ProjPoint>,
    ) -> Option<ProjPoint> {
        if let Some(v) = memo.get(&t.id()) {
            return Some(v.clone());
        }
        let v = match t.node() {
            Node::Var(name) => a[name].clone(),
            Node::ProjConst(p) => p.clone(),
            Node::AffineConst(_) => unreachable!("checked"),
            Node::Cross(l, r) => {
                let x = go(l, a, memo)?;
                let y = go(r, a, memo)?;
                x.cross(&y)?
            }
        };
        memo.insert(t.id(), v.clone());
        Some(v)
    }
    Ok(go(t, a, &mut HashMap::new()))
}

fn check_projective(t: &CrossTerm, a: &ProjAssignment) -> Result<(), TermError> {
    if t.has_affine_constants() {
        return Err(TermError::ModeMismatch("affine constant in projective evaluation".into()));
    }
    if let Some(v) = t.variables().into_iter().find(|v| !a.contains_key(v)) {
        return Err(TermError::Unbound(v));
    }
    Ok(())
}
