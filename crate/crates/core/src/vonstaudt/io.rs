use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exactfield::parse_vec3;
use crate::ringterms::parse_poly;
use crate::terms::{parse_term, Mode};

use super::{frame_from_basis, Compiled, FrameSource, VsError, XsatInstance};

#[derive(Serialize, Deserialize)]
struct InstanceJson {
    lhs: String,
    rhs: String,
    mode: Mode,
    vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    poly: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ring_vars: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    frame_vars: Option<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    frame_basis: Option<[String; 3]>,
}

impl XsatInstance {
    /// `{"lhs", "rhs", "mode", "vars"}` plus the compilation record when present.
    pub fn to_json(&self) -> serde_json::Value {
        let mut j = InstanceJson {
            lhs: self.lhs.to_string(),
            rhs: self.rhs.to_string(),
            mode: self.mode,
            vars: self.vars.clone(),
            poly: None,
            ring_vars: None,
            frame_vars: None,
            frame_basis: None,
        };
        if let Some(c) = &self.compiled {
            j.poly = Some(c.poly.to_string());
            j.ring_vars = Some(c.ring_vars.clone());
            match &c.frame {
                FrameSource::Variables(v) => j.frame_vars = Some(v.clone()),
                FrameSource::Constants(f) => j.frame_basis = Some(f.basis.clone().map(|b| b.to_string())),
            }
        }
        serde_json::to_value(j).expect("plain strings")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, VsError> {
        let j: InstanceJson =
            serde_json::from_value(v.clone()).map_err(|e| VsError::Format(e.to_string()))?;
        let mut inst = XsatInstance::new(parse_term(&j.lhs)?, parse_term(&j.rhs)?, j.mode);
        for var in &inst.vars {
            if !j.vars.contains(var) {
                return Err(VsError::Format(format!("variable {var} missing from \"vars\"")));
            }
        }
        inst.vars = j.vars;
        if let Some(poly) = j.poly {
            let poly = parse_poly(&poly)?;
            let ring_vars = j
                .ring_vars
                .unwrap_or_else(|| poly.variables().into_iter().map(|v| (v.clone(), v)).collect());
            let frame = match (j.frame_vars, j.frame_basis) {
                (Some(v), None) => FrameSource::Variables(v),
                (None, Some(b)) => {
                    let b = b
                        .iter()
                        .map(|s| parse_vec3(s))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| VsError::Format(e.to_string()))?;
                    FrameSource::Constants(frame_from_basis([
                        b[0].clone(),
                        b[1].clone(),
                        b[2].clone(),
                    ])?)
                }
                _ => {
                    return Err(VsError::Format(
                        "compiled instance needs exactly one of frame_vars, frame_basis".into(),
                    ))
                }
            };
            inst.compiled = Some(Compiled { poly, ring_vars, frame });
        }
        Ok(inst)
    }
}
