use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn qsp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsp"))
        .args(args)
        .output()
        .expect("run qsp")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn valid_pair_exits_zero() {
    let dir = TempDir::new().unwrap();
    let pair = write(&dir, "pair.json", r#"{"X": [2], "tau": [[1, 3]]}"#);
    let out = qsp(&["validate-pair", "--cartan", "A3", "--pair", &pair]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("valid"));
}

#[test]
fn invalid_pair_names_the_failed_condition() {
    let dir = TempDir::new().unwrap();
    let pair = write(&dir, "pair.json", r#"{"X": [2]}"#);
    let out = qsp(&["validate-pair", "--cartan", "A3", "--pair", &pair]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("coroot-integrality"));
}

#[test]
fn malformed_json_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let pair = write(&dir, "pair.json", r#"{"X": [2"#);
    let out = qsp(&["validate-pair", "--cartan", "A3", "--pair", &pair]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed input"));
}

#[test]
fn unknown_parameter_field_is_rejected() {
    let dir = TempDir::new().unwrap();
    let params = write(&dir, "p.json", r#"{"cartan": {"type": "A", "rank": 2}, "gamma": 1}"#);
    let out = qsp(&["bar-exists", "--params", &params]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn z_is_minus_one_when_quasi_split() {
    let dir = TempDir::new().unwrap();
    let pair = write(&dir, "pair.json", "{}");
    let out = qsp(&["compute", "--cartan", "A2", "--pair", &pair, "--what", "Zi", "--i", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "-1");
}

#[test]
fn closed_form_vanishes_for_orthogonal_fixed_nodes() {
    let dir = TempDir::new().unwrap();
    let cartan = write(&dir, "cartan.json", r#"{"nodes": 2, "A": [[2, 0], [0, 2]]}"#);
    let pair = write(&dir, "pair.json", "{}");
    let out = qsp(&[
        "compute", "--cartan", &cartan, "--pair", &pair, "--what", "Cij-closed", "--i", "1", "--j", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "0");
}

#[test]
fn closed_form_matches_projection_on_b2() {
    let dir = TempDir::new().unwrap();
    let pair = write(&dir, "pair.json", r#"{"X": [2]}"#);
    let out = qsp(&["compute", "--cartan", "B2", "--pair", &pair, "--what", "diff", "--i", "1", "--j", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "0 (is_zero: true)");
}

#[test]
fn canonical_parameters_for_the_quasi_split_a3_pair() {
    let dir = TempDir::new().unwrap();
    let pair = write(&dir, "pair.json", r#"{"tau": [[1, 3]]}"#);
    let report = dir.path().join("report.json");
    let out = qsp(&[
        "--out",
        report.to_str().unwrap(),
        "canonical",
        "--cartan",
        "A3",
        "--pair",
        &pair,
    ]);
    assert_eq!(out.status.code(), Some(0));
    // v = q^{1/2}, so q^-1 prints as v^-2.
    assert!(stdout(&out).starts_with("c = (1, v^-2, 1)"));
    let json: serde_json::Value = serde_json::from_slice(&std::fs::read(&report).unwrap()).unwrap();
    assert_eq!(json["verdict"], "exists");
}

#[test]
fn bar_check_fails_with_exit_one() {
    let dir = TempDir::new().unwrap();
    let params = write(
        &dir,
        "p.json",
        r#"{"cartan": {"type": "A", "rank": 3}, "pair": {"tau": [[1, 3]]}, "c": {"1": "1", "2": "1", "3": "1"}}"#,
    );
    let out = qsp(&["bar-exists", "--params", &params]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("verdict: fails"));
}

fn report_bytes(dir: &Path, name: &str, args: &[&str]) -> Vec<u8> {
    let path = dir.join(name);
    let mut full = vec!["--seed", "11", "--out", path.to_str().unwrap()];
    full.extend_from_slice(args);
    let out = qsp(&full);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    std::fs::read(path).unwrap()
}

#[test]
fn reports_are_byte_identical_for_a_seed() {
    let dir = TempDir::new().unwrap();
    let args = ["verify", "--suite", "derivations"];
    let a = report_bytes(dir.path(), "a.json", &args);
    let b = report_bytes(dir.path(), "b.json", &args);
    assert!(!a.is_empty());
    assert_eq!(a, b);
    let single = report_bytes(dir.path(), "c.json", &["--jobs", "1", "verify", "--suite", "derivations"]);
    assert_eq!(a, single);
}

#[test]
fn unknown_suite_is_an_input_error() {
    let out = qsp(&["verify", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn nu_atlas_over_small_ranks() {
    let out = qsp(&["nu-atlas", "--family", "A", "--family", "B", "--max-rank", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("+1"));
    assert!(!text.contains("-1"));
}
