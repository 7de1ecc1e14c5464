//! Command-line front end. `run` takes the argument list and writers and
//! returns the exit code: 0 for success or accept, 1 for reject or nothing
//! found, 2 for usage and input errors.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::circuits::{coordinatize, degree_bound, pit_random, sos, PitConfig, PitVerdict};
use crate::exactfield::{parse_scalar, parse_proj, parse_vec3, Scalar};
use crate::problems::{
    nonequiv_to_nontriv, nontriv_to_nonequiv, projective_to_affine_xsat, verify_witness,
    xnontriv_equation_from_poly, xuvec_from_nontriv, Kind, NontrivSplit, ProblemInstance, Verdict,
};
use crate::ringterms::{parse_poly, sum_of_squares, PolyBatch, RingTerm};
use crate::search::{search, FieldTag, SearchConfig, Strategy};
use crate::terms::{
    eval_affine, eval_projective, parse_term, parse_term_batch, AffineAssignment, Assignment,
    CrossTerm, Mode, ProjAssignment,
};
use crate::vonstaudt::{
    compile_constant_free, compile_equation, compile_with_constants, root_from_witness, selftest,
    size_constant, standard_frame, witness_from_root, Witness, XsatInstance,
};

/// Environment variable holding the default field tag for grid searches.
pub const FIELD_ENV: &str = "CROSSPROD_FIELD";

#[derive(Parser, Debug)]
#[command(name = "crossprod", version, about = "Cross product terms: evaluation, compilation, identity testing and search")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for every random choice; echoed in the output.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Field of search grids: Q, Qsqrt:D or Qsqrt:D1,D2.
    #[arg(long, global = true, env = FIELD_ENV, default_value = "Q")]
    pub field: String,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse cross terms or polynomials and print them in canonical form.
    Parse(ParseArgs),
    /// Evaluate a cross term at an assignment.
    Eval(EvalArgs),
    /// Compile a polynomial equation into a cross product equation.
    Compile(CompileArgs),
    /// Randomized identity test of a cross term.
    Pit(PitArgs),
    /// Grid search for a witness.
    Search(SearchArgs),
    /// Check a witness against an instance.
    Verify(VerifyArgs),
    /// Transport instances and witnesses between problems.
    Reduce(ReduceArgs),
    /// Run the gadget identity and commutation checks.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
pub struct TermInput {
    /// Cross term given inline.
    #[arg(long, conflicts_with = "term_file")]
    pub term: Option<String>,
    /// File with one cross term per line (`.xt`).
    #[arg(long)]
    pub term_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PolyInput {
    /// Polynomial given inline; repeat for a system.
    #[arg(long)]
    pub poly: Vec<String>,
    /// File with one polynomial per line (`.poly`) or a batch (`.json`).
    #[arg(long)]
    pub poly_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ParseArgs {
    #[command(flatten)]
    pub terms: TermInput,
    #[command(flatten)]
    pub polys: PolyInput,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[command(flatten)]
    pub terms: TermInput,
    /// `NAME=VALUE` with `[x, y, z]` (affine) or `<x : y : z>` (projective).
    #[arg(long = "assign", value_name = "NAME=VALUE")]
    pub assign: Vec<String>,
    /// Witness JSON whose assignment is used.
    #[arg(long)]
    pub witness: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Stage {
    /// `t_p` with the standard frame as constant leaves.
    Term,
    /// `t_p(ι(X1), …) = V1` with constants.
    Equation,
    /// `t‴_p = A` without constants.
    ConstantFree,
    /// `t‴_p × A` as a nontriviality instance.
    Nontriv,
}

#[derive(Args, Debug)]
pub struct CompileArgs {
    #[command(flatten)]
    pub polys: PolyInput,
    #[arg(long, value_enum, default_value_t = Stage::Equation)]
    pub stage: Stage,
    /// Shorthand for `--stage constant-free`.
    #[arg(long)]
    pub constant_free: bool,
    /// `NAME=VALUE` root of the polynomial; a witness is written alongside.
    #[arg(long = "root", value_name = "NAME=VALUE")]
    pub roots: Vec<String>,
    /// Where to write the witness built from `--root`.
    #[arg(long)]
    pub witness_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PitArgs {
    #[command(flatten)]
    pub terms: TermInput,
    /// Error exponent `k`: a nonzero term passes one trial with probability at most `2^-k`.
    #[arg(long = "error", default_value_t = 40)]
    pub k: u32,
    #[arg(long, default_value_t = 8)]
    pub trials: u32,
    /// Print the coordinate circuit as well.
    #[arg(long)]
    pub dump: bool,
}

#[derive(Args, Debug)]
pub struct InstanceInput {
    /// Instance JSON, either a problem instance or a compiled equation.
    #[arg(long, conflicts_with_all = ["term", "term_file"])]
    pub instance: Option<PathBuf>,
    #[command(flatten)]
    pub terms: TermInput,
    /// Problem kind when the instance is given by terms.
    #[arg(long, value_enum, default_value_t = KindArg::Xnontriv)]
    pub kind: KindArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Projective)]
    pub mode: ModeArg,
    /// Designated variable of an XSAT instance.
    #[arg(long)]
    pub designated: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Xnontriv,
    Xuvec,
    Xnonequiv,
    Xsat,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Affine,
    Projective,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[command(flatten)]
    pub input: InstanceInput,
    #[arg(long, default_value_t = 2)]
    pub bound: u32,
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: u64,
    #[arg(long, value_enum, default_value_t = StrategyArg::Exhaustive)]
    pub strategy: StrategyArg,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    pub time_limit: Option<f64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Exhaustive,
    Random,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InstanceInput,
    #[arg(long)]
    pub witness: PathBuf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Transport {
    /// XNONEQUIV `(s, t)` to XNONTRIV `s × t`.
    NonequivToNontriv,
    /// XNONTRIV `s × t` to XNONEQUIV `(s, t)`.
    NontrivToNonequiv,
    /// Projective XSAT `s = D` to affine XSAT `s′ = D`.
    ProjToAffine,
    /// Affine XNONTRIV witness to an XUVEC witness.
    Xuvec,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    #[arg(value_enum)]
    pub transport: Transport,
    #[command(flatten)]
    pub input: InstanceInput,
    /// Witness to transport along.
    #[arg(long)]
    pub witness: Option<PathBuf>,
    /// For `proj-to-affine`: forward takes a projective witness, backward an affine one.
    #[arg(long, value_enum, default_value_t = Direction::Forward)]
    pub direction: Direction,
}

#[derive(Args, Debug)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 1000)]
    pub frames: usize,
    #[arg(long, default_value_t = 500)]
    pub polys: usize,
    #[arg(long, default_value_t = 5)]
    pub points: usize,
}

/// A finished command: structured result, its text rendering, and whether it
/// is a positive outcome.
struct Report {
    json: Value,
    text: String,
    positive: bool,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report { json, text, positive: true }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let report = match dispatch(&cli) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            return 2;
        }
    };
    // a `.json` output path asks for JSON
    let json_out = cli.output.as_ref().is_some_and(|p| p.extension().is_some_and(|e| e == "json"));
    let format = if json_out { Format::Json } else { cli.format };
    let body = match format {
        Format::Json => serde_json::to_string_pretty(&report.json).expect("json value") + "\n",
        Format::Text => report.text,
    };
    let written = match &cli.output {
        Some(p) => std::fs::write(p, &body).with_context(|| format!("writing {}", p.display())),
        None => out.write_all(body.as_bytes()).map_err(Into::into),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e:#}");
        return 2;
    }
    if report.positive {
        0
    } else {
        1
    }
}

fn dispatch(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Parse(a) => cmd_parse(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Compile(a) => cmd_compile(a),
        Command::Pit(a) => cmd_pit(a, cli.seed),
        Command::Search(a) => cmd_search(a, cli),
        Command::Verify(a) => cmd_verify(a),
        Command::Reduce(a) => cmd_reduce(a),
        Command::Selftest(a) => cmd_selftest(a, cli.seed),
    }
}

fn read(p: &Path) -> Result<String> {
    std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
}

fn read_json(p: &Path) -> Result<Value> {
    serde_json::from_str(&read(p)?).with_context(|| format!("parsing JSON in {}", p.display()))
}

fn terms_of(t: &TermInput) -> Result<Vec<CrossTerm>> {
    match (&t.term, &t.term_file) {
        (Some(s), _) => Ok(vec![parse_term(s)?]),
        (None, Some(p)) => {
            let ts = parse_term_batch(&read(p)?)?;
            if ts.is_empty() {
                bail!("{} holds no terms", p.display());
            }
            Ok(ts)
        }
        (None, None) => bail!("give --term or --term-file"),
    }
}

fn single_term(t: &TermInput) -> Result<CrossTerm> {
    let mut ts = terms_of(t)?;
    if ts.len() != 1 {
        bail!("expected one term, found {}", ts.len());
    }
    Ok(ts.remove(0))
}

fn polys_of(p: &PolyInput) -> Result<Vec<RingTerm>> {
    let mut out: Vec<RingTerm> = p.poly.iter().map(|s| parse_poly(s)).collect::<Result<_, _>>()?;
    if let Some(path) = &p.poly_file {
        let text = read(path)?;
        if path.extension().is_some_and(|e| e == "json") {
            let batch: PolyBatch = serde_json::from_str(&text)?;
            out.extend(batch.parse()?);
        } else {
            for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
                out.push(parse_poly(line)?);
            }
        }
    }
    Ok(out)
}

/// A system is compiled as the single equation `Σ pᵢ² = 0`.
fn single_poly(p: &PolyInput) -> Result<RingTerm> {
    let ps = polys_of(p)?;
    match ps.len() {
        0 => bail!("give --poly or --poly-file"),
        1 => Ok(ps.into_iter().next().expect("one")),
        _ => Ok(sum_of_squares(&ps).expect("nonempty")),
    }
}

fn pairs(items: &[String]) -> Result<Vec<(String, String)>> {
    items
        .iter()
        .map(|s| {
            let (k, v) = s.split_once('=').ok_or_else(|| anyhow!("expected NAME=VALUE, got {s:?}"))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

fn cmd_parse(a: &ParseArgs) -> Result<Report> {
    let terms = if a.terms.term.is_some() || a.terms.term_file.is_some() { terms_of(&a.terms)? } else { vec![] };
    let polys = polys_of(&a.polys)?;
    if terms.is_empty() && polys.is_empty() {
        bail!("nothing to parse");
    }
    let tj: Vec<Value> = terms
        .iter()
        .map(|t| {
            json!({
                "term": t.to_string(),
                "leaves": t.leaf_count(),
                "size": t.size(),
                "depth": t.depth(),
                "multidegree": t.multidegree(),
            })
        })
        .collect();
    let pj: Vec<Value> = polys.iter().map(|p| json!({"poly": p.to_string(), "size": p.size()})).collect();
    let text: String = terms
        .iter()
        .map(|t| t.to_string())
        .chain(polys.iter().map(|p| p.to_string()))
        .map(|s| s + "\n")
        .collect();
    Ok(Report::ok(json!({"terms": tj, "polys": pj}), text))
}

fn assignment_of(items: &[String], witness: Option<&PathBuf>) -> Result<Assignment> {
    if let Some(p) = witness {
        return Ok(Witness::from_json(&read_json(p)?)?.assignment);
    }
    let kv = pairs(items)?;
    let projective = kv.first().is_some_and(|(_, v)| v.starts_with('<'));
    if projective {
        let m: ProjAssignment =
            kv.iter().map(|(k, v)| Ok((k.clone(), parse_proj(v)?))).collect::<Result<_>>()?;
        Ok(Assignment::Projective(m))
    } else {
        let m: AffineAssignment =
            kv.iter().map(|(k, v)| Ok((k.clone(), parse_vec3(v)?))).collect::<Result<_>>()?;
        Ok(Assignment::Affine(m))
    }
}

fn cmd_eval(a: &EvalArgs) -> Result<Report> {
    let t = single_term(&a.terms)?;
    let asg = assignment_of(&a.assign, a.witness.as_ref())?;
    let (value, text) = match &asg {
        Assignment::Affine(m) => {
            let v = eval_affine(&t, m)?;
            (json!(v.to_string()), v.to_string())
        }
        Assignment::Projective(m) => match eval_projective(&t, m)? {
            Some(p) => (json!(p.to_string()), p.to_string()),
            None => (Value::Null, "undefined".to_string()),
        },
    };
    Ok(Report::ok(json!({"mode": asg.mode(), "term": t.to_string(), "value": value}), text + "\n"))
}

fn cmd_compile(a: &CompileArgs) -> Result<Report> {
    let p = single_poly(&a.polys)?;
    let stage = if a.constant_free { Stage::ConstantFree } else { a.stage };
    let frame = standard_frame();
    let mut j = match stage {
        Stage::Term => {
            let t = compile_with_constants(&p, &frame);
            json!({"term": t.to_string(), "mode": Mode::Projective})
        }
        Stage::Equation => compile_equation(&p, &frame).to_json(),
        Stage::ConstantFree => compile_constant_free(&p)?.to_json(),
        Stage::Nontriv => xnontriv_equation_from_poly(&p)?.to_json(),
    };
    let terms: Vec<CrossTerm> = ["term", "lhs"]
        .iter()
        .filter_map(|k| j.get(*k).and_then(Value::as_str).map(parse_term))
        .chain(j.get("terms").and_then(Value::as_array).into_iter().flatten().filter_map(|v| v.as_str().map(parse_term)))
        .collect::<Result<_, _>>()?;
    let size: u64 = terms.iter().map(|t| t.size()).sum();
    let constants: u64 = terms.iter().map(|t| t.constant_leaf_count()).sum();
    j["stats"] = json!({
        "poly_size": p.size(),
        "term_size": size,
        "constant_leaves": constants,
        "size_constant": size_constant(),
    });
    let mut text = format!(
        "{}\nsize {} (polynomial {}), constant leaves {}\n",
        j.get("lhs").or(j.get("term")).or(j.get("terms")).map(render).unwrap_or_default(),
        size,
        p.size(),
        constants
    );
    if !a.roots.is_empty() {
        if stage != Stage::ConstantFree && stage != Stage::Equation {
            bail!("--root needs --stage equation or constant-free");
        }
        let roots: BTreeMap<String, Scalar> =
            pairs(&a.roots)?.into_iter().map(|(k, v)| Ok((k, parse_scalar(&v)?))).collect::<Result<_>>()?;
        let inst = if stage == Stage::ConstantFree { compile_constant_free(&p)? } else { compile_equation(&p, &frame) };
        let w = witness_from_root(&inst, &roots)?.to_json();
        match &a.witness_out {
            Some(path) => std::fs::write(path, serde_json::to_string_pretty(&w)? + "\n")?,
            None => text.push_str(&format!("witness {}\n", render(&w["assignment"]))),
        }
        j["witness"] = w;
    }
    Ok(Report::ok(j, text))
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn cmd_pit(a: &PitArgs, seed: u64) -> Result<Report> {
    let t = single_term(&a.terms)?;
    let coords = coordinatize(&t)?;
    let c = sos(&coords)?;
    let cfg = PitConfig { k: a.k, trials: a.trials, seed };
    let v = pit_random(&c, &cfg)?;
    let mut j = v.to_json(a.k);
    j["seed"] = json!(seed);
    j["trials"] = json!(a.trials);
    j["degree_bound"] = json!(degree_bound(&c));
    j["gates"] = json!(coords.node_count());
    let mut text = match &v {
        PitVerdict::NonZero { point, .. } => {
            let pt: Vec<String> = point.iter().map(|(k, x)| format!("{k}={x}")).collect();
            format!("verdict: nonzero\nwitness: {}\n", pt.join(" "))
        }
        PitVerdict::ProbablyZero { .. } => "verdict: probably_zero\n".to_string(),
    };
    text.push_str(&format!("error_bound: 2^-{}\nseed: {seed}\n", a.k));
    if a.dump {
        j["circuit"] = json!(coords.dump());
        text.push_str(&coords.dump());
    }
    Ok(Report::ok(j, text))
}

enum Loaded {
    Problem(ProblemInstance),
    Compiled(XsatInstance),
}

impl Loaded {
    fn problem(&self) -> ProblemInstance {
        match self {
            Loaded::Problem(p) => p.clone(),
            Loaded::Compiled(x) => ProblemInstance::from(x),
        }
    }
}

fn load_instance(i: &InstanceInput) -> Result<Loaded> {
    if let Some(p) = &i.instance {
        let v = read_json(p)?;
        return if v.get("kind").is_some() {
            Ok(Loaded::Problem(ProblemInstance::from_json(&v)?))
        } else {
            Ok(Loaded::Compiled(XsatInstance::from_json(&v)?))
        };
    }
    let terms = terms_of(&i.terms)?;
    let mode = match i.mode {
        ModeArg::Affine => Mode::Affine,
        ModeArg::Projective => Mode::Projective,
    };
    let kind = match i.kind {
        KindArg::Xnontriv => Kind::XNontriv,
        KindArg::Xuvec => Kind::XUvec,
        KindArg::Xnonequiv => Kind::XNonequiv,
        KindArg::Xsat => Kind::Xsat,
    };
    let inst = if kind == Kind::Xsat && terms.len() == 1 {
        ProblemInstance::xsat(terms[0].clone(), mode, i.designated.clone())?
    } else {
        ProblemInstance::new(kind, mode, terms)?
    };
    Ok(Loaded::Problem(inst))
}

fn cmd_search(a: &SearchArgs, cli: &Cli) -> Result<Report> {
    let inst = load_instance(&a.input)?.problem();
    let field: FieldTag = cli.field.parse().map_err(|e: String| anyhow!(e))?;
    let cfg = SearchConfig {
        bound: a.bound,
        field: field.clone(),
        budget: a.budget,
        seed: cli.seed,
        strategy: match a.strategy {
            StrategyArg::Exhaustive => Strategy::Exhaustive,
            StrategyArg::Random => Strategy::Random,
        },
        time_limit: a.time_limit.map(Duration::from_secs_f64),
    };
    let r = search(&inst, &cfg).map_err(|e| anyhow!(e))?;
    let mut j = r.to_json();
    j["bound"] = json!(a.bound);
    j["field"] = json!(field.to_string());
    j["seed"] = json!(cli.seed);
    let mut text = format!("verdict: {}\nevaluations: {}\n", r.verdict, r.evaluations);
    if let Some(w) = r.witness() {
        for (k, v) in w.assignment.to_text_map() {
            text.push_str(&format!("{k} = {v}\n"));
        }
    } else if r.verdict == crate::search::SearchVerdict::Exhausted {
        text.push_str(&format!("no witness with coordinates bounded by {} over {field}\n", a.bound));
    }
    text.push_str(&format!("seed: {}\n", cli.seed));
    let positive = r.witness().is_some();
    Ok(Report { json: j, text, positive })
}

fn verdict_report(v: &Verdict, mut j: Value) -> Report {
    let vj = v.to_json();
    j["verdict"] = vj["verdict"].clone();
    if let Some(r) = vj.get("reason") {
        j["reason"] = r.clone();
    }
    Report { json: j, text: format!("verdict: {v}\n"), positive: v.is_accept() }
}

fn cmd_verify(a: &VerifyArgs) -> Result<Report> {
    let loaded = load_instance(&a.input)?;
    let w = Witness::from_json(&read_json(&a.witness)?)?;
    let v = verify_witness(&loaded.problem(), &w);
    let mut rep = verdict_report(&v, json!({}));
    if let (Loaded::Compiled(x), true) = (&loaded, v.is_accept()) {
        if x.compiled.is_some() {
            let roots = root_from_witness(x, &w.assignment)?;
            let rj: BTreeMap<String, String> = roots.iter().map(|(k, r)| (k.clone(), r.to_string())).collect();
            for (k, r) in &rj {
                rep.text.push_str(&format!("root {k} = {r}\n"));
            }
            rep.json["roots"] = json!(rj);
        }
    }
    Ok(rep)
}

fn witness_in(a: &ReduceArgs) -> Result<Option<Witness>> {
    a.witness.as_ref().map(|p| Ok(Witness::from_json(&read_json(p)?)?)).transpose()
}

fn cmd_reduce(a: &ReduceArgs) -> Result<Report> {
    let inst = load_instance(&a.input)?.problem();
    let w = witness_in(a)?;
    let mut j = json!({"transport": format!("{:?}", a.transport)});
    let mut text = String::new();
    match a.transport {
        Transport::NonequivToNontriv => {
            if inst.kind != Kind::XNonequiv {
                bail!("expected an XNONEQUIV instance");
            }
            let out = nonequiv_to_nontriv(&inst.terms[0], &inst.terms[1])?;
            text.push_str(&format!("{}\n", out.terms[0]));
            j["instance"] = out.to_json();
            if let Some(w) = w {
                j["source_verdict"] = verify_witness(&inst, &w).to_json()["verdict"].clone();
                j["verdict"] = verify_witness(&out, &w).to_json()["verdict"].clone();
                j["witness"] = w.to_json();
            }
        }
        Transport::NontrivToNonequiv => {
            if inst.kind != Kind::XNontriv {
                bail!("expected an XNONTRIV instance");
            }
            match nontriv_to_nonequiv(&inst.terms[0]) {
                NontrivSplit::Pair(s, t) => {
                    let out = ProblemInstance::new(Kind::XNonequiv, Mode::Projective, vec![s, t])?;
                    text.push_str(&format!("{}\n{}\n", out.terms[0], out.terms[1]));
                    j["instance"] = out.to_json();
                    if let Some(w) = w {
                        j["verdict"] = verify_witness(&out, &w).to_json()["verdict"].clone();
                        j["witness"] = w.to_json();
                    }
                }
                NontrivSplit::TrivialVariableCase => {
                    text.push_str("trivial variable case\n");
                    j["trivial_variable_case"] = json!(true);
                }
            }
        }
        Transport::ProjToAffine => {
            let t = projective_to_affine_xsat(&inst)?;
            text.push_str(&format!("{} = {}\n", t.instance.terms[0], t.instance.designated.as_deref().unwrap_or("")));
            j["instance"] = t.instance.to_json();
            j["w_var"] = json!(t.w_var);
            if let Some(w) = w {
                let out = match a.direction {
                    Direction::Forward => t.forward(&w)?,
                    Direction::Backward => t.backward(&w)?,
                };
                for (k, v) in out.assignment.to_text_map() {
                    text.push_str(&format!("{k} = {v}\n"));
                }
                j["witness"] = out.to_json();
            }
        }
        Transport::Xuvec => {
            let w = w.ok_or_else(|| anyhow!("xuvec transport needs --witness"))?;
            let x = xuvec_from_nontriv(&inst.terms[0], &w)?;
            for (k, v) in x.witness.assignment.to_text_map() {
                text.push_str(&format!("{k} = {v}\n"));
            }
            text.push_str(&format!("rotation {}\n", x.rotation));
            j["witness"] = x.witness.to_json();
            j["rotation"] = json!(x.rotation.to_string());
            j["scales"] = json!(x.scales.iter().map(|(k, s)| (k.clone(), s.to_string())).collect::<BTreeMap<_, _>>());
            j["rotation_checked"] = json!(x.rotation.is_rotation());
        }
    }
    Ok(Report::ok(j, text))
}

fn cmd_selftest(a: &SelftestArgs, seed: u64) -> Result<Report> {
    let r = selftest(seed, a.frames, a.polys, a.points);
    let j = json!({
        "seed": r.seed,
        "frames": r.frames,
        "identity_failures": r.identity_failures,
        "polys": r.polys,
        "points": r.points,
        "agree": r.agree,
        "undefined": r.undefined,
        "disagree": r.disagree,
        "passed": r.passed(),
    });
    let text = format!(
        "frames {} identity failures {}\ncommutation: {} agree, {} undefined, {} disagree\nseed: {}\n{}\n",
        r.frames,
        r.identity_failures.len(),
        r.agree,
        r.undefined,
        r.disagree.len(),
        r.seed,
        if r.passed() { "passed" } else { "FAILED" }
    );
    Ok(Report { json: j, text, positive: r.passed() })
}
