use std::collections::BTreeMap;

use num_bigint::{BigInt, RandBigInt};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::exactfield::Scalar;

use super::{Circuit, CircuitError, InputId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PitConfig {
    /// Per-trial error exponent: `|S| ≥ 2^k · degree`.
    pub k: u32,
    pub trials: u32,
    pub seed: u64,
}

impl Default for PitConfig {
    fn default() -> Self {
        PitConfig { k: 40, trials: 8, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PitVerdict {
    /// A point where the output is nonzero, checked by exact evaluation.
    NonZero { point: BTreeMap<InputId, BigInt>, value: Scalar },
    /// No nonzero value found; a nonzero polynomial survives one trial with
    /// probability at most `2^-k`.
    ProbablyZero { k: u32 },
}

impl PitVerdict {
    pub fn is_nonzero(&self) -> bool {
        matches!(self, PitVerdict::NonZero { .. })
    }

    pub fn to_json(&self, k: u32) -> serde_json::Value {
        match self {
            PitVerdict::NonZero { point, .. } => json!({
                "verdict": "nonzero",
                "witness": point.iter().map(|(i, v)| (i.to_string(), v.to_string())).collect::<BTreeMap<_, _>>(),
                "error_bound": format!("2^-{k}"),
            }),
            PitVerdict::ProbablyZero { k } => json!({
                "verdict": "probably_zero",
                "error_bound": format!("2^-{k}"),
            }),
        }
    }
}

/// Half-width `m` of the sample set `{−m, …, m}`, the smallest with `2m + 1 ≥ 2^k · max(d, 1)`.
pub fn sample_half_width(k: u32, degree: u64) -> BigInt {
    let need = (BigInt::from(1) << k) * BigInt::from(degree.max(1));
    need / 2
}

/// Schwartz–Zippel test on the first output of `c`. Trials draw independent
/// points from per-trial streams of one seed; the first nonzero trial in
/// index order decides, independent of scheduling.
pub fn pit_random(c: &Circuit, cfg: &PitConfig) -> Result<PitVerdict, CircuitError> {
    if cfg.k == 0 {
        return Err(CircuitError::Config("error exponent must be at least 1".into()));
    }
    if c.outputs().len() != 1 {
        return Err(CircuitError::Arity { expected: 1, found: c.outputs().len() });
    }
    let inputs: Vec<InputId> = c.inputs().into_iter().cloned().collect();
    let m = sample_half_width(cfg.k, c.degree_bound());
    let integral = c.has_integer_constants();
    let trials = if inputs.is_empty() { 1 } else { cfg.trials.max(1) };
    let hit = (0..trials).into_par_iter().find_map_first(|trial| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(trial as u64);
        let lo = -m.clone();
        let hi = &m + 1;
        let point: BTreeMap<InputId, BigInt> =
            inputs.iter().map(|id| (id.clone(), rng.gen_bigint_range(&lo, &hi))).collect();
        let value = if integral {
            Scalar::from_bigint(c.eval_integers(&point).ok()?.swap_remove(0))
        } else {
            let sp = point.iter().map(|(k, v)| (k.clone(), Scalar::from_bigint(v.clone()))).collect();
            c.eval(&sp).ok()?.swap_remove(0)
        };
        (!value.is_zero()).then_some((point, value))
    });
    match hit {
        Some((point, value)) => {
            let sp = point.iter().map(|(k, v)| (k.clone(), Scalar::from_bigint(v.clone()))).collect();
            let check = c.eval(&sp)?.swap_remove(0);
            assert_eq!(check, value, "integer and exact evaluation disagree");
            Ok(PitVerdict::NonZero { point, value })
        }
        None => Ok(PitVerdict::ProbablyZero { k: cfg.k }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{coordinatize, sos};
    use crate::terms::{parse_term, vanishing_example};

    #[test]
    fn vanishing_term_is_probably_zero() {
        let c = sos(&coordinatize(&vanishing_example()).unwrap()).unwrap();
        let v = pit_random(&c, &PitConfig::default()).unwrap();
        assert_eq!(v, PitVerdict::ProbablyZero { k: 40 });
        assert_eq!(v.to_json(40)["verdict"], "probably_zero");
    }

    #[test]
    fn cross_is_nonzero() {
        let c = sos(&coordinatize(&parse_term("(V x W)").unwrap()).unwrap()).unwrap();
        let v = pit_random(&c, &PitConfig { k: 20, trials: 8, seed: 3 }).unwrap();
        let PitVerdict::NonZero { point, value } = &v else { panic!("{v:?}") };
        assert_eq!(point.len(), 6);
        assert!(value.signum() > 0);
        assert_eq!(v.to_json(20)["error_bound"], "2^-20");
        assert_eq!(v, pit_random(&c, &PitConfig { k: 20, trials: 8, seed: 3 }).unwrap());
    }

    #[test]
    fn sample_set_size() {
        let m = sample_half_width(20, 10);
        assert!(&m * 2 + 1 >= BigInt::from(10u64 << 20));
        assert!(&m * 2 - 1 < BigInt::from(10u64 << 20));
    }

    #[test]
    fn constant_circuit() {
        let mut c = Circuit::new();
        let z = c.constant(Scalar::zero());
        c.set_outputs(vec![z]);
        assert!(!pit_random(&c, &PitConfig::default()).unwrap().is_nonzero());
        let mut c = Circuit::new();
        let one = c.constant(Scalar::one());
        c.set_outputs(vec![one]);
        assert!(pit_random(&c, &PitConfig::default()).unwrap().is_nonzero());
    }
}
