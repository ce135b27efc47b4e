use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use splitseq::exactmath::rational::{parse_rational, to_fraction_string};

fn fixture(name: &str) -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_splitseq")).args(args).env_remove("SPLITSEQ_TRIAL_BOUND").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn temp_config(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("splitseq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn golden_verify_passes() {
    let out = run(&["verify", fixture("golden.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_array().unwrap().len() > 10);
}

#[test]
fn corrupted_image_fails_verification() {
    let cfg = temp_config("bad.json", r#"{"field": {"polynomial": [-1, -1, 1]}, "automorphisms": [[0, 1], [2, -1]]}"#);
    let out = run(&["verify", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["checks"][0]["name"], "automorphisms");
    assert_eq!(v["checks"][0]["passed"], false);
}

#[test]
fn input_errors_exit_2_with_path() {
    let cfg = temp_config("nonmonic.json", r#"{"field": {"polynomial": [-1, -1, 2]}}"#);
    let out = run(&["analyze", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["path"], "$.field.polynomial[2]");
    let out = run(&["analyze", "/nonexistent/config.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sequences_round_trip_and_fibonacci() {
    let f = fixture("golden.json");
    let out = run(&["sequences", f.to_str().unwrap(), "--class", "1", "--from", "0", "--to", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let terms: Vec<String> =
        v["sequences"][0]["terms"].as_array().unwrap().iter().map(|t| t.as_str().unwrap().to_string()).collect();
    let fib = [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89];
    assert_eq!(terms, fib.iter().map(|n| format!("{n}/1")).collect::<Vec<_>>());
    for t in &terms {
        assert_eq!(&to_fraction_string(&parse_rational(t).unwrap()), t);
    }
    for method in ["direct", "trace"] {
        let other = run(&["sequences", f.to_str().unwrap(), "--class", "1", "--to", "10", "--method", method]);
        assert_eq!(json(&other)["sequences"], v["sequences"]);
    }
}

#[test]
fn output_is_deterministic() {
    let f = fixture("s3_sextic.json");
    let a = run(&["classify", f.to_str().unwrap(), "--max-prime", "100", "--jobs", "1"]);
    let b = run(&["classify", f.to_str().unwrap(), "--max-prime", "100", "--jobs", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.contains(&b'\r'));
}

#[test]
fn classify_reports_verdict_fields() {
    let out = run(&["classify", fixture("golden.json").to_str().unwrap(), "--max-prime", "30"]);
    let v = json(&out);
    let first = &v["verdicts"][0];
    for key in ["p", "skipped", "reason", "residues", "class", "oracleClass", "agree"] {
        assert!(first.get(key).is_some(), "missing {key}");
    }
    let eleven = v["verdicts"].as_array().unwrap().iter().find(|x| x["p"] == 11).unwrap();
    assert_eq!(eleven["class"], 1);
    assert_eq!(eleven["oracleClass"], 1);
    assert!(v["report"]["predicted"].as_array().unwrap().contains(&Value::from(5)));
}

#[test]
fn trial_bound_env_default() {
    let out = Command::new(env!("CARGO_BIN_EXE_splitseq"))
        .args(["classify", fixture("golden.json").to_str().unwrap(), "--max-prime", "10"])
        .env("SPLITSEQ_TRIAL_BOUND", "50")
        .output()
        .unwrap();
    assert_eq!(json(&out)["report"]["trialDivisionBound"], 50);
}

#[test]
fn chartab_and_table_format() {
    let f = fixture("s3_sextic.json");
    let out = run(&["chartab", f.to_str().unwrap()]);
    let v = json(&out);
    let degrees: Vec<u64> = v["characters"].as_array().unwrap().iter().map(|c| c["degree"].as_u64().unwrap()).collect();
    assert_eq!(degrees, vec![1, 1, 2]);
    let out = run(&["--format", "table", "analyze", fixture("golden.json").to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("X^2 - X - 1"), "{text}");
}
