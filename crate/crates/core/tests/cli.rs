use std::io::Write;
use std::process::{Command, Output};

use qduality::linalg::ComplexMatrix;
use serde_json::Value;
use tempfile::NamedTempFile;

fn qduality(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qduality"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn json_file(v: &impl serde::Serialize) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    serde_json::to_writer(&mut f, v).unwrap();
    f.flush().unwrap();
    f
}

fn raw_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f.flush().unwrap();
    f
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

#[test]
fn classify_maximally_mixed_state() {
    let f = json_file(&ComplexMatrix::identity(2).scale_real(0.5));
    let out = qduality(&["classify", path(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    let kinds: Vec<&str> = v["kinds"].as_array().unwrap().iter().map(|k| k.as_str().unwrap()).collect();
    assert!(kinds.contains(&"Density") && kinds.contains(&"Effect"));
    assert!(!kinds.contains(&"Projection"));
}

#[test]
fn classify_expectation_failure_exits_one() {
    let f = json_file(&ComplexMatrix::pauli_z());
    let out = qduality(&["classify", path(&f), "--expect", "positive"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["pass"], Value::Bool(false));
}

#[test]
fn malformed_matrix_exits_two() {
    let f = raw_file(r#"{"dim": 2, "data": [[1, 0]]}"#);
    let out = qduality(&["classify", path(&f)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let missing = qduality(&["classify", "/nonexistent/matrix.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn duality_roundtrip_density() {
    let out = qduality(&["duality-roundtrip", "--kind", "density", "--dim", "3", "--seeds", "50"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(report(&out)["max_residual"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn wp_of_pauli_x() {
    let channel = raw_file(r#"{"type":"unitary","u":{"dim":2,"data":[[0,0],[1,0],[1,0],[0,0]]}}"#);
    let effect = json_file(&ComplexMatrix::diag(&[1.0, 0.0]));
    let out = qduality(&["wp", "--channel", path(&channel), "--effect", path(&effect), "--check-duality", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert!(v["duality_residual"].as_f64().unwrap() <= 1e-10);
    let w: ComplexMatrix = serde_json::from_value(v["wp"].clone()).unwrap();
    assert!(w.approx_eq(&ComplexMatrix::diag(&[0.0, 1.0]), 1e-10).unwrap());
}

#[test]
fn wp_rejects_invalid_inputs() {
    let bad_mix = raw_file(
        r#"{"type":"mixture","weights":["1/2","1/3"],"parts":[
            {"type":"unitary","u":{"dim":1,"data":[[1,0]]}},
            {"type":"unitary","u":{"dim":1,"data":[[1,0]]}}]}"#,
    );
    let effect = json_file(&ComplexMatrix::identity(1));
    let out = qduality(&["wp", "--channel", path(&bad_mix), "--effect", path(&effect)]);
    assert_eq!(out.status.code(), Some(2));

    let channel = raw_file(r#"{"type":"unitary","u":{"dim":2,"data":[[1,0],[0,0],[0,0],[1,0]]}}"#);
    let not_effect = json_file(&ComplexMatrix::identity(2).scale_real(2.0));
    let out = qduality(&["wp", "--channel", path(&channel), "--effect", path(&not_effect)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not an effect"));
}

#[test]
fn laws_instances() {
    for (inst, dim) in [("interval", "1"), ("powerset", "4"), ("effects", "2"), ("projections", "3")] {
        let out = qduality(&["laws", "--instance", inst, "--dim", dim, "--samples", "100", "--seed", "3"]);
        assert_eq!(out.status.code(), Some(0), "{inst}");
        assert_eq!(report(&out)["seed"], Value::from(3));
    }
    let out = qduality(&["laws", "--suite", "monad"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn failure_report_has_seed_and_counterexample() {
    let out = qduality(&["laws", "--instance", "planted-bug", "--seed", "12"]);
    assert_eq!(out.status.code(), Some(1));
    let v = report(&out);
    assert_eq!(v["seed"], Value::from(12));
    let uniq = v["laws"]
        .as_array()
        .unwrap()
        .iter()
        .find(|l| l["law"] == "orthosupplement uniqueness")
        .unwrap();
    assert!(uniq["counterexample"]["x"].is_string());
}

#[test]
fn free_iso_each_construction() {
    for which in ["s", "r", "c", "chain"] {
        let out = qduality(&["free-iso", "--which", which, "--dim", "3", "--seeds", "20"]);
        assert_eq!(out.status.code(), Some(0), "{which}");
    }
}

#[test]
fn identical_flags_give_identical_bytes() {
    let args = ["laws", "--instance", "effects", "--dim", "3", "--samples", "60", "--seed", "5"];
    let a = qduality(&args);
    let b = qduality(&args);
    assert_eq!(a.stdout, b.stdout);
    let pretty = qduality(&["--pretty", "laws", "--instance", "effects", "--dim", "3", "--samples", "60", "--seed", "5"]);
    assert_eq!(pretty.status.code(), a.status.code());
    let x: Value = serde_json::from_slice(&a.stdout).unwrap();
    let y: Value = serde_json::from_slice(&pretty.stdout).unwrap();
    assert_eq!(x, y);
    assert!(!pretty.stderr.is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qduality(&[]).status.code(), Some(2));
    assert_eq!(qduality(&["free-iso", "--which", "q"]).status.code(), Some(2));
    assert_eq!(qduality(&["--tol", "0", "laws", "--suite", "monad"]).status.code(), Some(2));
    assert_eq!(qduality(&["--help"]).status.code(), Some(0));
}
