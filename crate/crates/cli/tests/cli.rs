use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn grplab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grplab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = grplab(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn count_report_fields() {
    let v = json(&["count", "--group", "Z/5", "--set", "explicit:0,1,2", "--equation", "xyz", "--seed", "4"]);
    for key in [
        "group", "sets", "equation", "count", "degenerate", "normalizer_num", "normalizer_den", "ratio",
        "engine", "elapsed_ms", "seed",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["count"], 6);
    assert_eq!(v["seed"], 4);
    assert!(v["elapsed_ms"].is_null());
    let v = json(&["count", "--group", "Z/5", "--set", "explicit:0,1,2", "--equation", "ap3", "--engine", "brute"]);
    assert_eq!((v["count"].as_u64(), v["degenerate"].as_u64()), (Some(5), Some(3)));
    let v = json(&["count", "--group", "Z/4", "--set", "subgroup:2", "--equation", "mixing:3"]);
    assert_eq!(v["count"], 8);
    assert_eq!((v["normalizer_num"].as_u64(), v["normalizer_den"].as_u64()), (Some(1), Some(2)));
    let v = json(&["mixing", "--group", "Z/4", "--set", "subgroup:2", "--n", "3"]);
    assert_eq!(v["ratio"], 16.0);
    let v = json(&["count", "--group", "Z/5", "--set", "explicit:0,1,2", "--equation", "xyz", "--timing"]);
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn three_sets_and_engines() {
    let args = |engine| {
        json(&[
            "count", "--group", "Z/6 x Z/4", "--set", "random:0.4,1", "random:0.5,2", "random:0.3,3",
            "--engine", engine,
        ])["count"]
            .clone()
    };
    let brute = args("brute");
    assert_eq!(brute, args("fft"));
    assert_eq!(brute, args("cayley"));
}

#[test]
fn quasirandom_and_group() {
    let v = json(&["quasirandom", "--group", "PSL2(5)"]);
    assert_eq!(v["degrees"], serde_json::json!([1, 3, 3, 4, 5]));
    assert_eq!(v["quasirandomness_degree"], 3);
    assert_eq!(v["abelianization_order"], 1);
    let v = json(&["group", "--group", "Z/2 x Z/3", "--check"]);
    assert_eq!(v["order"], 6);
    assert_eq!(v["abelian"], true);
}

#[test]
fn stats_regular_rich() {
    let v = json(&["stats", "--group", "Z/1000", "--set", "interval:0,10", "--powers", "3"]);
    assert_eq!(v["doubling_exact"], "19/10");
    let v = json(&["rich", "--group", "Z/5", "--set", "explicit:0,1,2,3,4", "--epsilon", "1"]);
    assert_eq!(v["status"], "verified_exact");
    let v = json(&["rich", "--group", "Z/5", "--set", "explicit:0,1,2,3,4", "--epsilon", "1/5"]);
    assert_eq!(v["status"], "violated");
    let v = json(&["regular", "--group", "Z/3", "--set", "explicit:0,1,2", "--epsilon", "1/2"]);
    assert_eq!(v["status"], "verified_exact");
}

#[test]
fn colorings() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "c.json", r#"{"k": 2, "colors": [0, 1, 1, 1, 1]}"#);
    let v = json(&["schur", "--group", "Z/5", "--coloring", &file]);
    assert_eq!(v["argmax"], 1);
    assert_eq!(v["counts"][1]["count"], 12);
    let v = json(&["schur", "--group", "Z/6", "--k", "1", "--iterations", "3"]);
    assert_eq!(v["max_count"], 36);
    let v = json(&["hindman", "--group", "Z/5", "--coloring", &file, "--n", "2", "--nontrivial"]);
    assert_eq!(v["result"]["outcome"], "witness");
    let v = json(&["hindman", "--group", "Z/8", "--set", "explicit:1,2,3", "--n", "2"]);
    assert_eq!(v["result"]["elements"], serde_json::json!([1, 1]));
    let v = json(&["cip", "--group", "Z/3", "--k", "2", "--n", "2", "--trials", "3"]);
    assert_eq!(v["exact"], true);
    assert_eq!(v["trials"].as_array().unwrap().len(), 3);
}

#[test]
fn exit_codes() {
    // usage
    assert_eq!(grplab(&["count", "--group", "Z/5"]).status.code(), Some(1));
    assert_eq!(grplab(&["count", "--group", "Q/5", "--set", "explicit:0"]).status.code(), Some(1));
    assert_eq!(grplab(&["bogus"]).status.code(), Some(1));
    assert_eq!(grplab(&["--help"]).status.code(), Some(0));
    // invariant: a table that is not a group
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "t.csv", "0,1\n1,1\n");
    let spec = format!("table:{t}");
    assert_eq!(grplab(&["group", "--group", &spec]).status.code(), Some(2));
    // budget
    assert_eq!(grplab(&["rich", "--group", "Z/200", "--set", "interval:0,100"]).status.code(), Some(3));
    assert_eq!(
        grplab(&["group", "--group", "Z/300000"]).status.code(),
        Some(3)
    );
}

const CONFIG: &str = r#"
recipe = "mixing-trend"
seed = 11
groups = ["PSL2(5)", "Z/60"]

[params]
density = 0.3
seeds = 3
"#;

#[test]
fn run_is_byte_identical_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "exp.toml", CONFIG);
    let a = grplab(&["run", "--config", &cfg, "--threads", "1"]);
    let b = grplab(&["run", "--config", &cfg, "--threads", "1"]);
    let c = grplab(&["run", "--config", &cfg, "--threads", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let report: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report["config"]["seed"], 11);
    let other: Value = serde_json::from_slice(&grplab(&["run", "--config", &cfg, "--seed", "12"]).stdout).unwrap();
    assert_eq!(other["config"]["seed"], 12);
    let csv = grplab(&["run", "--config", &cfg, "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("cell,recipe,group,instance,metric,value\n"));
    let out = dir.path().join("r.json");
    let w = grplab(&["run", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert!(w.status.success() && w.stdout.is_empty());
    assert_eq!(std::fs::read(&out).unwrap(), a.stdout);
}

#[test]
fn sweep_command() {
    let dir = tempfile::tempdir().unwrap();
    let text = format!("{CONFIG}\n[grid]\ngroup = [\"PSL2(5)\", \"PSL2(7)\"]\ndensity = [0.2, 0.4]\n");
    let cfg = write(dir.path(), "sweep.toml", &text);
    let v = json(&["sweep", "--config", &cfg]);
    assert_eq!(v["cells"].as_array().unwrap().len(), 4);
    let empty = write(dir.path(), "empty.toml", &format!("{CONFIG}\n[grid]\ndensity = []\n"));
    assert_eq!(grplab(&["sweep", "--config", &empty]).status.code(), Some(1));
    assert_eq!(grplab(&["sweep"]).status.code(), Some(1));
}
