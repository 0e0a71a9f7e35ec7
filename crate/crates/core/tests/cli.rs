use std::path::Path;
use std::process::{Command, Output};

fn degsplit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_degsplit")).args(args).output().unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn solve_then_verify_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    let lab = dir.path().join("lab.json");
    assert!(degsplit(&["gen", "regular", "--n", "60", "--delta", "6", "--seed", "3", "-o", p(&g)]).status.success());

    let o = degsplit(&["solve", "exact", p(&g), "--mode", "up", "-o", p(&lab), "--report", "/dev/null"]);
    assert_eq!(o.status.code(), Some(0));
    let o = degsplit(&["verify", "--property", "eq2", "--mode", "up", p(&g), "--labeling", p(&lab)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());

    // An all-red labeling violates the split at every node.
    let text = std::fs::read_to_string(&lab).unwrap().replace("\"B\"", "\"R\"");
    std::fs::write(&lab, text).unwrap();
    let o = degsplit(&["verify", "--property", "eq2", p(&g), "--labeling", p(&lab)]);
    assert_eq!(o.status.code(), Some(1));
    let lines: Vec<serde_json::Value> =
        String::from_utf8(o.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 60);
    assert!(lines[0]["subject"]["node"].is_u64());
}

#[test]
fn report_fields() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    let rep = dir.path().join("r.json");
    degsplit(&["gen", "regular", "--n", "40", "--delta", "8", "--seed", "1", "-o", p(&g)]);
    let o = degsplit(&["solve", "pi", p(&g), "--y", "2", "-o", "/dev/null", "--report", p(&rep)]);
    assert!(o.status.success());
    let r: serde_json::Value = serde_json::from_slice(&std::fs::read(&rep).unwrap()).unwrap();
    assert_eq!(r["command"], "solve pi");
    assert_eq!(r["input_sha256"].as_str().unwrap().len(), 64);
    assert_eq!(r["verdict"]["pass"], true);
    assert!(r["extra"]["plan"]["steps"].as_array().unwrap().len() <= 5);
    assert!(r["ledger"]["bo"].as_u64().unwrap() > 0);
}

#[test]
fn oracle_and_bench_output() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("k5.json");
    degsplit(&["gen", "complete", "--n", "5", "-o", p(&g)]);
    let o = degsplit(&["oracle", "--predicate", "orientation", "--rho1", "0", "--rho2", "0", p(&g)]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["sat"], false);
    assert!(v["witness"].is_null());

    let o = degsplit(&["bench", "--deltas", "--format", "json"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap().trim(), "[]");
    let o = degsplit(&["bench", "--suite", "exact", "--sizes", "50", "--deltas", "4,6", "--format", "json"]);
    let rows: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1]["delta"], 6);
}

#[test]
fn errors_exit_2() {
    assert_eq!(degsplit(&["solve", "split", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(degsplit(&["solve", "bogus", "x"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    degsplit(&["gen", "cycle", "--n", "6", "-o", p(&g)]);
    // y out of range for Δ = 2
    assert_eq!(degsplit(&["solve", "pi", p(&g), "--y", "2"]).status.code(), Some(2));
    // rho outside [0, 1/2]
    assert_eq!(degsplit(&["solve", "orient", p(&g), "--rho1", "0.7"]).status.code(), Some(2));
}
