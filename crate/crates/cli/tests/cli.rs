//! End-to-end tests of the `gnl` binary: exit semantics, file round-trips
//! and JSON schema stability.

use std::path::Path;
use std::process::{Command, Output};

fn gnl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gnl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

const H1_ALGEBRA: &str = r#"{
    "dim": 3,
    "basis": ["e1", "e2", "e3"],
    "brackets": [{"i": "e1", "j": "e2", "terms": [{"k": "e3", "c": "1"}]}]
}"#;

const H1_GRADING: &str = r#"{"d": 1, "degrees": {"e1": [1], "e2": [1], "e3": [2]}}"#;

#[test]
fn dims_json_output_is_stable() {
    let out = gnl(&["family", "dims", "--n", "17", "--format", "json"]);
    assert!(out.status.success());
    let expected = r#"{
  "d1": 20,
  "d2": 156,
  "d2_0": 2,
  "d2_1": 1,
  "d3": 36,
  "z": 189,
  "z2": 153
}
"#;
    assert_eq!(stdout(&out), expected);
}

#[test]
fn jacobi_check_exit_semantics() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("h1.json");
    write(&good, H1_ALGEBRA);
    let out = gnl(&["check", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    // corrupted n(1): retargeting [a, c] at the non-central e1 breaks Jacobi
    let built = dir.path().join("n1.json");
    let out = gnl(&[
        "family",
        "build",
        "--n",
        "1",
        "--out",
        built.to_str().unwrap(),
        "--quiet",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let mut file: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&built).unwrap()).unwrap();
    let mut hit = false;
    for bracket in file["brackets"].as_array_mut().unwrap() {
        if bracket["i"] == "a" && bracket["j"] == "c" {
            bracket["terms"][0]["k"] = serde_json::json!("e1");
            hit = true;
        }
    }
    assert!(hit, "corruption must hit the [a,c] entry");
    let bad = dir.path().join("bad.json");
    write(&bad, &file.to_string());
    let out = gnl(&["check", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("violations"));
}

#[test]
fn grading_poly_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let alg = dir.path().join("h1.json");
    let grad = dir.path().join("g.json");
    write(&alg, H1_ALGEBRA);
    write(&grad, H1_GRADING);

    let out = gnl(&[
        "grading",
        "poly",
        alg.to_str().unwrap(),
        grad.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["length"], "6");
    assert_eq!(v["d"], 1);
    assert_eq!(v["terms"][1]["c"], "-2");

    // invalid grading exits 1
    let badg = dir.path().join("bad.json");
    write(&badg, r#"{"d": 1, "degrees": {"e1": [1], "e2": [1], "e3": [3]}}"#);
    let out = gnl(&[
        "grading",
        "check",
        alg.to_str().unwrap(),
        badg.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn grading_collapse_to_line_preserves_length() {
    let dir = tempfile::tempdir().unwrap();
    let alg = dir.path().join("ab3.json");
    write(
        &alg,
        r#"{"dim": 3, "basis": ["e1", "e2", "e3"], "brackets": []}"#,
    );
    let grad = dir.path().join("g.json");
    write(
        &grad,
        r#"{"d": 2, "degrees": {"e1": [1,0], "e2": [2,0], "e3": [0,1]}}"#,
    );
    let lined = dir.path().join("line.json");
    let out = gnl(&[
        "grading",
        "collapse",
        alg.to_str().unwrap(),
        grad.to_str().unwrap(),
        "--to-line",
        "--out",
        lined.to_str().unwrap(),
        "--format",
        "json",
        "--quiet",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["m_sequence"], serde_json::json!([4]));
    let file: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&lined).unwrap()).unwrap();
    assert_eq!(file["degrees"]["e3"], serde_json::json!([4]));

    // explicit m = 1 warns about lost length but still exits 0
    let out = gnl(&[
        "grading",
        "collapse",
        alg.to_str().unwrap(),
        grad.to_str().unwrap(),
        "--m",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["lossy"], true);
    assert_eq!(v["length_before"], "8");
    assert_eq!(v["length_after"], "6");
    assert!(String::from_utf8_lossy(&out.stderr).contains("loses length"));
}

#[test]
fn family_build_round_trips_and_rebase() {
    let dir = tempfile::tempdir().unwrap();
    let alg = dir.path().join("n2.json");
    let grad = dir.path().join("n2g.json");
    let out = gnl(&[
        "family",
        "build",
        "--n",
        "2",
        "--out",
        alg.to_str().unwrap(),
        "--grading-out",
        grad.to_str().unwrap(),
        "--check",
        "--quiet",
    ]);
    assert_eq!(out.status.code(), Some(0));

    // the generated files re-parse and validate against each other
    let out = gnl(&[
        "grading",
        "check",
        alg.to_str().unwrap(),
        grad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));

    let matrix = dir.path().join("p.json");
    write(&matrix, r#"[["0", "1"], ["1", "0"]]"#);
    let out = gnl(&[
        "family",
        "rebase-check",
        "--n",
        "2",
        "--matrix",
        matrix.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn fine_grading_large_n_reports_unverified() {
    let out = gnl(&["family", "fine-grading", "--n", "5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["note"]
        .as_str()
        .unwrap()
        .contains("not verified at this scale"));
}

#[test]
fn verify_report_schema_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let out = gnl(&[
        "verify",
        "trc3",
        "--n-from",
        "17",
        "--n-to",
        "18",
        "--report",
        report.to_str().unwrap(),
        "--quiet",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["claim"], "trc3");
    assert_eq!(v["range"], serde_json::json!([17, 18]));
    assert_eq!(v["pass"], true);
    assert_eq!(v["verdicts"][0]["n"], 17);
    assert_eq!(v["verdicts"][0]["holds"], true);
    assert!(v["verdicts"][0]["length"].is_string());
    assert!(v["verdicts"][0]["bound"].is_string());

    // the pn claim fails at its nominal start n = 30: exit code 1
    let out = gnl(&[
        "verify", "pn", "--n-from", "30", "--n-to", "30", "--quiet",
    ]);
    assert_eq!(out.status.code(), Some(1));

    let out = gnl(&["verify", "tail"]);
    assert_eq!(out.status.code(), Some(0));

    let out = gnl(&["verify", "fine", "--n", "2", "--quiet"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn poly_expand_and_length() {
    let dir = tempfile::tempdir().unwrap();
    let factors = dir.path().join("f.json");
    write(&factors, r#"{"factors": [{"e": [1], "m": 2}, {"e": [2], "m": 1}]}"#);
    let poly = dir.path().join("p.json");
    let out = gnl(&[
        "poly",
        "expand",
        factors.to_str().unwrap(),
        "--out",
        poly.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["length"], "6");

    // length accepts both factor lists and expanded polynomials
    for file in [&factors, &poly] {
        let out = gnl(&["poly", "length", file.to_str().unwrap(), "--format", "json"]);
        assert_eq!(out.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(v["length"], "6");
    }
}

#[test]
fn der_requires_family_for_checks_and_reports_dimension() {
    let dir = tempfile::tempdir().unwrap();
    let alg = dir.path().join("h1.json");
    write(&alg, H1_ALGEBRA);
    let out = gnl(&["der", alg.to_str().unwrap(), "--format", "json", "--quiet"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["der_dim"], 6);

    let out = gnl(&["der", alg.to_str().unwrap(), "--check", "levi"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_and_input_errors_exit_2() {
    let out = gnl(&["check", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(2));

    let out = gnl(&["family", "dims"]); // missing --n
    assert_eq!(out.status.code(), Some(2));

    let out = gnl(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));

    let out = gnl(&["verify", "induction", "--n", "100"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cohomology_heisenberg_equality() {
    let dir = tempfile::tempdir().unwrap();
    let alg = dir.path().join("h1.json");
    let grad = dir.path().join("g.json");
    write(&alg, H1_ALGEBRA);
    write(&grad, H1_GRADING);
    let out = gnl(&[
        "cohomology",
        alg.to_str().unwrap(),
        "--grading",
        grad.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["betti"], serde_json::json!([1, 2, 2, 1]));
    assert_eq!(v["total"], 6);
    assert_eq!(v["length"], "6");
    assert_eq!(v["bound_holds"], true);
}
