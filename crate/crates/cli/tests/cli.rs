//! End-to-end checks of the command surface: exit codes, file loading,
//! report shape, and determinism.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn holtor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holtor"))
        .args(args)
        .output()
        .expect("holtor runs")
}

fn json_stdout(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_temp(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().expect("temp file");
    f.write_all(content.as_bytes()).expect("write temp file");
    f
}

const SO3_FILE: &str = r#"{
  "schema": "holtor-rep/1",
  "name": "so3-from-file",
  "n": 3,
  "generators": [
    [["0","-1","0"],["1","0","0"],["0","0","0"]],
    [["0","0","-1"],["0","0","0"],["1","0","0"]],
    [["0","0","0"],["0","0","-1"],["0","1","0"]]
  ]
}"#;

#[test]
fn exceptional_stabilizer_report_matches_its_fixed_values() {
    let out = holtor(&[
        "analyze",
        "--rep",
        "g2",
        "--ops",
        "curvature,torsion,classify",
    ]);
    assert!(out.status.success());
    let v = json_stdout(&out);
    assert_eq!(v["results"]["curvature"]["dim"], 77);
    assert_eq!(v["results"]["torsion"]["algebra_valued_dim"], 0);
    assert_eq!(v["results"]["torsion"]["complement_valued_dim"], 1);
    assert_eq!(v["results"]["torsion"]["three_form_dim"], 1);
    assert_eq!(v["results"]["classify"]["verdict"], "WeakHolonomyType");
    assert_eq!(v["provenance"]["seed"], "0x5eed");
}

#[test]
fn diagonal_pair_reports_zero_curvature() {
    let out = holtor(&["analyze", "--rep", "diag:so3:2", "--ops", "curvature,berger"]);
    assert!(out.status.success());
    let v = json_stdout(&out);
    assert_eq!(v["results"]["curvature"]["dim"], 0);
    assert_eq!(v["results"]["berger"]["dim"], 0);
}

#[test]
fn file_backed_representation_loads() {
    let f = write_temp(SO3_FILE);
    let rep = format!("file:{}", f.path().display());
    let out = holtor(&["analyze", "--rep", &rep, "--ops", "curvature"]);
    assert!(out.status.success());
    let v = json_stdout(&out);
    assert_eq!(v["rep"]["name"], "so3-from-file");
    assert_eq!(v["rep"]["algebra_dim"], 3);
    assert_eq!(v["results"]["curvature"]["dim"], 6);
}

#[test]
fn non_skew_generator_is_a_validation_error() {
    let f = write_temp(
        r#"{"schema": "holtor-rep/1", "name": "bad", "n": 2,
            "generators": [[["1","0"],["0","1"]]]}"#,
    );
    let rep = format!("file:{}", f.path().display());
    let out = holtor(&["analyze", "--rep", &rep, "--ops", "curvature"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("not skew"), "stderr: {err}");
}

#[test]
fn zero_denominator_is_a_rational_parse_error() {
    let f = write_temp(
        r#"{"schema": "holtor-rep/1", "name": "x", "n": 2,
            "generators": [[["0","1/0"],["-1","0"]]]}"#,
    );
    let rep = format!("file:{}", f.path().display());
    let out = holtor(&["analyze", "--rep", &rep, "--ops", "curvature"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("invalid rational"), "stderr: {err}");
    assert!(err.contains("generators[0][0][1]"), "stderr: {err}");
}

#[test]
fn truncated_file_reports_line_and_column() {
    let f = write_temp(r#"{"schema": "holtor-rep/1", "na"#);
    let rep = format!("file:{}", f.path().display());
    let out = holtor(&["analyze", "--rep", &rep, "--ops", "curvature"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 1"), "stderr: {err}");
}

#[test]
fn unknown_catalog_key_is_a_validation_error() {
    let out = holtor(&["analyze", "--rep", "nope99", "--ops", "curvature"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_on_a_reducible_module_reports_and_exits_2() {
    let out = holtor(&["analyze", "--rep", "diag:so3:2", "--ops", "classify"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json_stdout(&out);
    assert_eq!(v["results"]["classify"]["error"]["exit"], 2);
}

#[test]
fn single_pair_model_reports_every_check() {
    let out = holtor(&[
        "infmodel",
        "--rep",
        "adjoint:su2",
        "--eta",
        "invariant:0",
        "--lambda",
        "1",
        "--kappa",
        "1/1",
    ]);
    assert!(out.status.success());
    let v = json_stdout(&out);
    let sol = &v["results"]["infmodel"]["solutions"][0];
    assert_eq!(sol["jacobi_zero"], true);
    assert_eq!(sol["einstein"], true);
    assert_eq!(sol["scalar_identity"], true);
    assert_eq!(sol["scalar"], "12");
    assert_eq!(sol["eta_norm_squared"], "3");
}

#[test]
fn solve_mode_finds_the_closing_family() {
    let out = holtor(&["infmodel", "--rep", "adjoint:su2", "--solve"]);
    assert!(out.status.success());
    let v = json_stdout(&out);
    assert_eq!(v["results"]["infmodel"]["family"], "all-pairs");
    assert_eq!(
        v["results"]["infmodel"]["solutions"][0]["scalar_identity"],
        true
    );
}

#[test]
fn model_without_parameters_or_solve_is_rejected() {
    let out = holtor(&["infmodel", "--rep", "adjoint:su2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn eta_index_out_of_range_is_rejected() {
    let out = holtor(&[
        "infmodel",
        "--rep",
        "adjoint:su2",
        "--eta",
        "invariant:5",
        "--solve",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_reports_are_deterministic() {
    let args = [
        "analyze",
        "--rep",
        "su3",
        "--ops",
        "curvature,torsion,conditions",
        "--emit-bases",
    ];
    let a = holtor(&args);
    let b = holtor(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn seed_env_var_is_recorded_and_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_holtor"))
        .args(["analyze", "--rep", "su2", "--ops", "curvature"])
        .env("HOLTOR_SEED", "0xBEEF")
        .output()
        .expect("holtor runs");
    assert!(out.status.success());
    let v = json_stdout(&out);
    assert_eq!(v["provenance"]["seed"], "0xbeef");

    let bad = Command::new(env!("CARGO_BIN_EXE_holtor"))
        .args(["analyze", "--rep", "su2", "--ops", "curvature"])
        .env("HOLTOR_SEED", "pebble")
        .output()
        .expect("holtor runs");
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn explicit_torsion_module_from_file_must_be_invariant() {
    // A coordinate line in V tensor the complement is not action-closed for
    // the unitary plane.
    let alg = holtor_core::catalog::by_key("u2").unwrap();
    let ambient = alg.n() * alg.orthocomplement_in_so().dim();
    let mut entries = vec!["0".to_string(); ambient];
    entries[0] = "1".to_string();
    let body = format!(
        r#"{{"schema": "holtor-w/1", "vectors": [[{}]]}}"#,
        entries
            .iter()
            .map(|e| format!("{e:?}"))
            .collect::<Vec<_>>()
            .join(",")
    );
    let f = write_temp(&body);
    let mode = format!("file:{}", f.path().display());
    let out = holtor(&["analyze", "--rep", "u2", "--ops", "conditions", "--w-mode", &mode]);
    assert_eq!(out.status.code(), Some(2));
    let v = json_stdout(&out);
    let msg = v["results"]["conditions"]["error"]["message"]
        .as_str()
        .unwrap();
    assert!(msg.contains("action-closed"), "message: {msg}");
}

const AXIS_FILE: &str = r#"{
  "schema": "holtor-rep/1",
  "name": "axis",
  "n": 3,
  "generators": [
    [["0","-1","0"],["1","0","0"],["0","0","0"]]
  ]
}"#;

#[test]
fn full_torsion_module_changes_the_conditions() {
    let f = write_temp(AXIS_FILE);
    let rep = format!("file:{}", f.path().display());
    let full = holtor(&["analyze", "--rep", &rep, "--ops", "conditions", "--w-mode", "full"]);
    assert!(full.status.success());
    let v = json_stdout(&full);
    assert_eq!(v["results"]["conditions"]["w_dim"], 6);
    assert_eq!(v["results"]["conditions"]["cond_a"], false);
    assert_eq!(v["results"]["conditions"]["parallel"], false);

    let inv = holtor(&["analyze", "--rep", &rep, "--ops", "conditions", "--w-mode", "invariant"]);
    assert!(inv.status.success());
    let v = json_stdout(&inv);
    assert_eq!(v["results"]["conditions"]["w_dim"], 2);
}

#[test]
fn markdown_sweep_mirrors_the_classical_table() {
    let out = holtor(&["table1", "--format", "md"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("| algebra |"));
    assert!(text.contains("| g2 |"));
    assert!(text.contains("77 (77)"));
}
