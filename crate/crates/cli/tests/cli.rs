use std::process::{Command, Output};

use serde_json::Value;

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verify"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn passing_sweep_exits_zero() {
    let out = verify(&["--family", "wilson", "--primes", "5:40"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let table = String::from_utf8(out.stdout).unwrap();
    assert!(table.starts_with("family"));
    assert!(!table.contains("FAIL"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("0 failed, 0 errors"));
}

#[test]
fn json_report() {
    let out = verify(&[
        "--family",
        "gauss",
        "--primes",
        "13:41",
        "--format",
        "json",
        "--precision",
        "2",
    ]);
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let reports = doc["reports"].as_array().unwrap();
    assert!(!reports.is_empty());
    assert!(reports
        .iter()
        .all(|r| r["pass"] == Value::Bool(true) && r["j"].as_u64().unwrap() <= 2));
    assert_eq!(doc["summary"]["total"]["fail"], 0);
}

#[test]
fn failing_sweep_exits_one() {
    // The half-period closed form for odd n disagrees with enumeration.
    let out = verify(&["--family", "hmhs", "--primes", "13:13"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn writes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = verify(&[
        "--family",
        "dirichlet",
        "--primes",
        "7:31",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(doc["reports"].as_array().is_some_and(|r| !r.is_empty()));
}

#[test]
fn same_output_for_any_job_count() {
    let a = verify(&[
        "--family", "jacobi", "--primes", "5:60", "--format", "json", "--jobs", "1",
    ]);
    let b = verify(&[
        "--family", "jacobi", "--primes", "5:60", "--format", "json", "--jobs", "4",
    ]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn lists_families() {
    let out = verify(&["--list"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let names: Vec<&str> = text.lines().map(|l| l.split_whitespace().next().unwrap()).collect();
    assert_eq!(names.len(), 16);
    assert!(names.contains(&"wilson") && names.contains(&"hmhs"));
}

#[test]
fn configuration_errors_exit_two() {
    for args in [
        &["--family", "fermat"][..],
        &["--primes", "9:5"],
        &["--primes", "5:1000000"],
        &["--primes", "five"],
        &["--family", "wilson", "--precision", "0"],
        &["--format", "xml"],
    ] {
        let out = verify(args);
        assert_eq!(code(&out), 2, "args {args:?}");
        assert!(out.stdout.is_empty());
    }
}
