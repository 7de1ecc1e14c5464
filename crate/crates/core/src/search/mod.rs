//! Grid search for witnesses of problem instances.
//!
//! The search is an oracle for small cases only. `Exhausted` speaks about the
//! grid and nothing else.

mod field;
mod grid;

pub use field::FieldTag;
pub use grid::{enumerate_proj_points, grid_vectors};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::exactfield::{ProjPoint, Vec3};
use crate::problems::{verify_witness, Kind, ProblemInstance};
use crate::terms::{Assignment, FlatDag, FlatNode, Mode};
use crate::vonstaudt::Witness;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Exhaustive,
    Random,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Integer coefficient bound of the grid.
    pub bound: u32,
    pub field: FieldTag,
    /// Maximum number of variable assignments tried.
    pub budget: u64,
    pub seed: u64,
    pub strategy: Strategy,
    /// Wall-clock cap; hitting it is reported as an exceeded budget.
    pub time_limit: Option<Duration>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            bound: 1,
            field: FieldTag::rational(),
            budget: 1_000_000,
            seed: 0,
            strategy: Strategy::Exhaustive,
            time_limit: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchVerdict {
    Found(Witness),
    /// No witness anywhere on the grid.
    Exhausted,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub verdict: SearchVerdict,
    pub evaluations: u64,
}

impl SearchResult {
    pub fn witness(&self) -> Option<&Witness> {
        match &self.verdict {
            SearchVerdict::Found(w) => Some(w),
            _ => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut j = json!({"verdict": self.verdict.to_string(), "evaluations": self.evaluations});
        if let SearchVerdict::Found(w) = &self.verdict {
            j["witness"] = serde_json::to_value(w.assignment.to_text_map()).expect("string map");
        }
        j
    }
}

impl fmt::Display for SearchVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchVerdict::Found(_) => "found",
            SearchVerdict::Exhausted => "exhausted",
            SearchVerdict::BudgetExceeded => "budget_exceeded",
        })
    }
}

fn validate(cfg: &SearchConfig) -> Result<(), String> {
    if cfg.bound == 0 {
        return Err("bound must be at least 1".into());
    }
    if cfg.budget == 0 {
        return Err("budget must be at least 1".into());
    }
    Ok(())
}

pub fn search(inst: &ProblemInstance, cfg: &SearchConfig) -> Result<SearchResult, String> {
    match cfg.strategy {
        Strategy::Exhaustive => brute_search(inst, cfg),
        Strategy::Random => random_search(inst, cfg),
    }
}

/// The instance's terms flattened, with each node's value computed as soon as
/// its last variable is fixed. A zero (affine) or undefined (projective)
/// node rules out every extension: all four predicates need every sub-term
/// nonzero, resp. defined.
struct Evaluator<'a> {
    inst: &'a ProblemInstance,
    dag: FlatDag,
    projective: bool,
    /// Nodes to evaluate once variable `k` is fixed; `by_stage[0]` holds the
    /// constant nodes, `by_stage[k + 1]` those of variable `k`.
    by_stage: Vec<Vec<usize>>,
    /// The root of the designated variable or second term, if any.
    rhs: Option<usize>,
}

impl<'a> Evaluator<'a> {
    fn new(inst: &'a ProblemInstance) -> Self {
        let vars = inst.variables();
        let mut roots = inst.terms.clone();
        let rhs_term = inst.xsat_rhs().filter(|_| inst.terms.len() == 1);
        roots.extend(rhs_term.iter().cloned());
        let dag = FlatDag::new(&roots, &vars);
        let mut stage = vec![0usize; dag.nodes.len()];
        for (i, n) in dag.nodes.iter().enumerate() {
            stage[i] = match n {
                FlatNode::Var(v) => v + 1,
                FlatNode::Affine(_) | FlatNode::Proj(_) => 0,
                FlatNode::Cross(a, b) => stage[*a].max(stage[*b]),
            };
        }
        let mut by_stage = vec![Vec::new(); dag.vars.len() + 1];
        for (i, s) in stage.iter().enumerate() {
            by_stage[*s].push(i);
        }
        let rhs = match inst.kind {
            Kind::Xsat => Some(dag.roots[1]),
            Kind::XNonequiv => Some(dag.roots[1]),
            _ => None,
        };
        Evaluator { inst, projective: inst.mode == Mode::Projective, dag, by_stage, rhs }
    }

    fn n_vars(&self) -> usize {
        self.dag.vars.len()
    }

    /// Fills the nodes of `stage`; false when one of them is zero.
    fn fill(&self, stage: usize, point: &[Vec3], vals: &mut [Vec3]) -> bool {
        for &i in &self.by_stage[stage] {
            let v = match &self.dag.nodes[i] {
                FlatNode::Var(k) => point[*k].clone(),
                FlatNode::Affine(c) => c.clone(),
                FlatNode::Proj(p) => p.vec().clone(),
                FlatNode::Cross(a, b) => vals[*a].cross(&vals[*b]),
            };
            if v.is_zero() {
                return false;
            }
            vals[i] = v;
        }
        true
    }

    fn accepts(&self, vals: &[Vec3]) -> bool {
        let top = &vals[self.dag.roots[0]];
        match (self.inst.kind, self.projective) {
            (Kind::XNontriv, _) => true,
            (Kind::XUvec, _) => *top == Vec3::unit(2),
            (Kind::XNonequiv, _) => !top.is_parallel(&vals[self.rhs.expect("two terms")]),
            (Kind::Xsat, true) => top.is_parallel(&vals[self.rhs.expect("rhs")]),
            (Kind::Xsat, false) => *top == vals[self.rhs.expect("rhs")],
        }
    }

    fn witness(&self, point: &[Vec3]) -> Witness {
        let names = self.dag.vars.iter().cloned();
        let a = if self.projective {
            Assignment::Projective(
                names.zip(point).map(|(k, v)| (k, ProjPoint::new(v.clone()).expect("grid point"))).collect(),
            )
        } else {
            Assignment::Affine(names.zip(point.iter().cloned()).collect::<BTreeMap<_, _>>())
        };
        Witness::new(a)
    }

    /// Exact re-check of a candidate; the search only reports what passes it.
    fn confirm(&self, point: &[Vec3]) -> Option<Witness> {
        let w = self.witness(point);
        let ok = verify_witness(self.inst, &w).is_accept();
        debug_assert!(ok, "incremental evaluation disagrees with verify_witness");
        ok.then_some(w)
    }
}

enum Partition {
    Found(Witness, u64),
    Exhausted(u64),
    Stopped(u64),
}

/// Depth-first search of the grid with the first variable fixed to `first`.
fn dfs_partition(
    ev: &Evaluator,
    grid: &[Vec3],
    first: usize,
    budget: u64,
    deadline: Option<Instant>,
    stop: &AtomicBool,
) -> Partition {
    let n = ev.n_vars();
    let mut vals = vec![Vec3::zero(); ev.dag.nodes.len()];
    if !ev.fill(0, &[], &mut vals) {
        return Partition::Exhausted(0);
    }
    let mut idx = vec![0usize; n];
    let mut point = vec![Vec3::zero(); n];
    idx[0] = first;
    let mut depth = 0usize;
    let mut evals = 0u64;
    loop {
        // try idx[depth] at depth
        evals += 1;
        if evals > budget || stop.load(Ordering::Relaxed) {
            return Partition::Stopped(evals - 1);
        }
        if evals % 1024 == 0 && deadline.is_some_and(|d| Instant::now() > d) {
            stop.store(true, Ordering::Relaxed);
            return Partition::Stopped(evals);
        }
        point[depth] = grid[idx[depth]].clone();
        let ok = ev.fill(depth + 1, &point, &mut vals);
        if ok && depth + 1 == n {
            if ev.accepts(&vals) {
                if let Some(w) = ev.confirm(&point) {
                    return Partition::Found(w, evals);
                }
            }
        } else if ok {
            depth += 1;
            idx[depth] = 0;
            continue;
        }
        // advance to the next candidate, backtracking as needed
        loop {
            if depth == 0 {
                return Partition::Exhausted(evals);
            }
            idx[depth] += 1;
            if idx[depth] < grid.len() {
                break;
            }
            depth -= 1;
        }
    }
}

/// Exhaustive search in grid order. Partitions by the first variable run in
/// parallel batches; results merge in grid order, so the returned witness is
/// the first one in that order whatever the scheduling.
pub fn brute_search(inst: &ProblemInstance, cfg: &SearchConfig) -> Result<SearchResult, String> {
    validate(cfg)?;
    let ev = Evaluator::new(inst);
    let grid = grid_vectors(&cfg.field, cfg.bound, ev.projective);
    let deadline = cfg.time_limit.map(|t| Instant::now() + t);
    if ev.n_vars() == 0 {
        let mut vals = vec![Vec3::zero(); ev.dag.nodes.len()];
        let verdict = match ev.fill(0, &[], &mut vals) && ev.accepts(&vals) {
            true => ev.confirm(&[]).map_or(SearchVerdict::Exhausted, SearchVerdict::Found),
            false => SearchVerdict::Exhausted,
        };
        return Ok(SearchResult { verdict, evaluations: 1 });
    }
    let stop = AtomicBool::new(false);
    let batch = rayon::current_num_threads().max(1) * 4;
    let mut evaluations = 0u64;
    for chunk in (0..grid.len()).collect::<Vec<_>>().chunks(batch) {
        let remaining = cfg.budget - evaluations;
        let parts: Vec<Partition> = chunk
            .par_iter()
            .map(|&f| dfs_partition(&ev, &grid, f, remaining, deadline, &stop))
            .collect();
        for p in parts {
            match p {
                Partition::Found(w, e) => {
                    return Ok(SearchResult { verdict: SearchVerdict::Found(w), evaluations: evaluations + e })
                }
                Partition::Exhausted(e) => evaluations += e,
                Partition::Stopped(e) => {
                    return Ok(SearchResult {
                        verdict: SearchVerdict::BudgetExceeded,
                        evaluations: evaluations + e,
                    })
                }
            }
            if evaluations > cfg.budget {
                return Ok(SearchResult { verdict: SearchVerdict::BudgetExceeded, evaluations });
            }
        }
    }
    Ok(SearchResult { verdict: SearchVerdict::Exhausted, evaluations })
}

/// Uniform draws from the grid, one complete assignment per evaluation.
pub fn random_search(inst: &ProblemInstance, cfg: &SearchConfig) -> Result<SearchResult, String> {
    validate(cfg)?;
    let ev = Evaluator::new(inst);
    let grid = grid_vectors(&cfg.field, cfg.bound, ev.projective);
    let deadline = cfg.time_limit.map(|t| Instant::now() + t);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut vals = vec![Vec3::zero(); ev.dag.nodes.len()];
    if !ev.fill(0, &[], &mut vals) {
        return Ok(SearchResult { verdict: SearchVerdict::BudgetExceeded, evaluations: 0 });
    }
    for draw in 1..=cfg.budget {
        if deadline.is_some_and(|d| Instant::now() > d) {
            return Ok(SearchResult { verdict: SearchVerdict::BudgetExceeded, evaluations: draw - 1 });
        }
        let point: Vec<Vec3> = (0..ev.n_vars()).map(|_| grid[rng.gen_range(0..grid.len())].clone()).collect();
        let ok = (1..=ev.n_vars()).all(|s| ev.fill(s, &point, &mut vals));
        if ok && ev.accepts(&vals) {
            if let Some(w) = ev.confirm(&point) {
                return Ok(SearchResult { verdict: SearchVerdict::Found(w), evaluations: draw });
            }
        }
    }
    Ok(SearchResult { verdict: SearchVerdict::BudgetExceeded, evaluations: cfg.budget })
}
