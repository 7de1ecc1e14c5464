use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn crossprod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crossprod"))
        .args(args)
        .env_remove("CROSSPROD_FIELD")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn path(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

#[test]
fn pit_on_the_vanishing_example() {
    let o = crossprod(&["pit", "--term", "(((V x (V x W)) x V) x (V x W))", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let j = json(&o);
    assert_eq!(j["verdict"], "probably_zero");
    assert_eq!(j["error_bound"], "2^-40");

    let o = crossprod(&["pit", "--term", "((V x W) x V)"]);
    assert!(stdout(&o).starts_with("verdict: nonzero\n"));
}

#[test]
fn compile_root_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst.json");
    let wit = dir.path().join("w.json");
    let o = crossprod(&[
        "compile", "--constant-free", "--poly", "X*X - 2",
        "--root", "X=(0 + 1 * sqrt(2))", "--witness-out", path(&wit), "--output", path(&inst),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let compiled: Value = serde_json::from_str(&std::fs::read_to_string(&inst).unwrap()).unwrap();
    assert!(compiled["stats"]["term_size"].as_u64().unwrap() <= 5 * compiled["stats"]["size_constant"].as_u64().unwrap());
    assert_eq!(compiled["stats"]["constant_leaves"], 0);

    let text = crossprod(&["verify", "--instance", path(&inst), "--witness", path(&wit)]);
    assert_eq!(text.status.code(), Some(0));
    assert!(stdout(&text).contains("verdict: accept"));
    let j = json(&crossprod(&["verify", "--instance", path(&inst), "--witness", path(&wit), "--format", "json"]));
    assert_eq!(j["verdict"], "accept");
    assert_eq!(j["roots"]["X"], "(0 + 1 * sqrt(2))");
}

#[test]
fn rejected_witness_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let wit = dir.path().join("w.json");
    std::fs::write(&wit, r#"{"assignment": {"V": "[1, 0, 0]", "W": "[2, 0, 0]"}}"#).unwrap();
    let o = crossprod(&["verify", "--term", "(V x W)", "--mode", "affine", "--witness", path(&wit)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("verdict: reject"));
}

#[test]
fn search_found_and_exhausted() {
    let o = crossprod(&["search", "--term", "(V x W)", "--bound", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("verdict: found"));

    let o = crossprod(&["search", "--term", "(V x V)", "--bound", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let j = json(&o);
    assert_eq!(j["verdict"], "exhausted");
    assert!(j.get("witness").is_none());
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(crossprod(&["search", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(crossprod(&["pit", "--term", "(V x"]).status.code(), Some(2));
    assert_eq!(crossprod(&["search", "--term", "V", "--field", "Qsqrt:4"]).status.code(), Some(2));
}

#[test]
fn random_search_is_seeded() {
    let args = ["search", "--term", "((V x W) x U)", "--strategy", "random", "--bound", "3", "--seed", "17", "--format", "json"];
    let a = crossprod(&args);
    let b = crossprod(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 17);
}

#[test]
fn field_from_environment() {
    let run = |env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_crossprod"));
        c.args(["search", "--term", "(V x W)", "--bound", "1", "--format", "json"]);
        match env {
            Some(f) => c.env("CROSSPROD_FIELD", f),
            None => c.env_remove("CROSSPROD_FIELD"),
        };
        c.output().unwrap()
    };
    assert_eq!(json(&run(None))["field"], "Q");
    assert_eq!(json(&run(Some("Qsqrt:2")))["field"], "Qsqrt:2");
    assert_eq!(run(Some("nonsense")).status.code(), Some(2));
}

#[test]
fn json_output_path_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = crossprod(&["pit", "--term", "(V x W)", "--output", path(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let j: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(j["verdict"], "nonzero");
}
