//! End-to-end exercise of the command-line surface: pipelines, exit
//! codes, report determinism, and the shape pinned by the shipped schema.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_minor-designs")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).expect("stdout is a json report")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("minor-designs-cli-tests");
    std::fs::create_dir_all(&dir).expect("temp dir");
    dir.join(name)
}

#[test]
fn construct_blocks_verify_pipeline() {
    let mat = tmp("q11.mat");
    let blk = tmp("q11.blk");
    let out = run(&[
        "construct",
        "--family",
        "paley_conference",
        "--param",
        "q=11",
        "--out",
        mat.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "construct failed: {out:?}");
    let out = run(&[
        "blocks",
        "--in",
        mat.to_str().unwrap(),
        "--k",
        "4",
        "--a",
        "9",
        "--out",
        blk.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let report = tmp("q11.json");
    let out = run(&[
        "verify-design",
        "--blocks",
        blk.to_str().unwrap(),
        "--t",
        "3",
        "--json",
        report.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let body = stdout_json(&out);
    assert_eq!(body["kind"], "t_design");
    assert_eq!(body["lambda"], "3");
    assert_eq!(body["parameters"]["v"], 12);
    // gs-check passes on the same block set.
    let out = run(&["gs-check", "--blocks", blk.to_str().unwrap()]);
    assert!(out.status.success());
}

#[test]
fn verify_design_flags_failures_with_exit_2() {
    let blk = tmp("ragged.blk");
    // All 2-subsets of [5] minus one: not a 1-design.
    std::fs::write(&blk, "v=5 k=2\n1 2\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5\n3 4\n3 5\n").unwrap();
    let out = run(&["verify-design", "--blocks", blk.to_str().unwrap(), "--t", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let body = stdout_json(&out);
    assert_eq!(body["kind"], "not_a_design");
    assert!(body["witness"].is_object());
}

#[test]
fn empty_block_file_is_a_degenerate_design() {
    let blk = tmp("empty.blk");
    std::fs::write(&blk, "v=6 k=4\n").unwrap();
    let out = run(&["verify-design", "--blocks", blk.to_str().unwrap(), "--t", "3"]);
    assert!(out.status.success());
    let body = stdout_json(&out);
    assert_eq!(body["degenerate"], "empty");
    assert_eq!(body["lambda"], "0");
}

#[test]
fn hypothesis_violation_exits_3_and_bad_input_exits_4() {
    let mat = tmp("s3.mat");
    let out = run(&[
        "construct",
        "--family",
        "signed_hypercube",
        "--param",
        "d=3",
        "--out",
        mat.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    // Three minor values at k=4: the two-minor hypotheses fail.
    let out = run(&[
        "check-hypotheses",
        "--in",
        mat.to_str().unwrap(),
        "--k",
        "4",
        "--t",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["spectrum", "--in", "/nonexistent.mat", "--k", "3"]);
    assert_eq!(out.status.code(), Some(4));
    let out = run(&["reproduce", "--table", "no:such-table"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn predict_reconciles_the_hamming_rows() {
    let mat = tmp("s3p.mat");
    run(&[
        "construct",
        "--family",
        "signed_hypercube",
        "--param",
        "d=3",
        "--out",
        mat.to_str().unwrap(),
    ]);
    let out = run(&[
        "predict",
        "--in",
        mat.to_str().unwrap(),
        "--k",
        "4",
        "--a",
        "1",
        "--scheme",
        "hamming:3",
        "--c",
        "4",
        "--reconcile",
    ]);
    assert!(out.status.success(), "{out:?}");
    let body = stdout_json(&out);
    assert_eq!(body["lambda"], serde_json::json!(["7", "5", "9"]));
    assert_eq!(body["reconciliation"]["match"], true);
}

#[test]
fn report_bodies_are_identical_across_reruns() {
    let mat = tmp("det.mat");
    run(&[
        "construct",
        "--family",
        "paley_conference",
        "--param",
        "q=5",
        "--out",
        mat.to_str().unwrap(),
    ]);
    let strip = |mut v: Value| -> Value {
        v.as_object_mut()
            .and_then(|m| m.get_mut("manifest"))
            .and_then(Value::as_object_mut)
            .map(|m| m.remove("timing_ms"));
        v
    };
    let a = strip(stdout_json(&run(&[
        "spectrum",
        "--in",
        mat.to_str().unwrap(),
        "--k",
        "4",
    ])));
    let b = strip(stdout_json(&run(&[
        "spectrum",
        "--in",
        mat.to_str().unwrap(),
        "--k",
        "4",
    ])));
    assert_eq!(a, b, "rerun changed the report body");
}

#[test]
fn reports_match_the_shipped_schema_shape() {
    // A light structural check against the schema: required keys exist
    // and have the right JSON types.
    let schema_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let schema: Value =
        serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();
    let kinds: Vec<String> = schema["properties"]["kind"]["enum"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    let mat = tmp("schema.mat");
    let blk = tmp("schema.blk");
    run(&[
        "construct",
        "--family",
        "paley_conference",
        "--param",
        "q=5",
        "--out",
        mat.to_str().unwrap(),
    ]);
    run(&[
        "blocks",
        "--in",
        mat.to_str().unwrap(),
        "--k",
        "4",
        "--a",
        "5",
        "--out",
        blk.to_str().unwrap(),
    ]);
    // The q=5 matrix has a single 4x4 minor value, so prediction needs a
    // larger instance.
    let mat9 = tmp("schema9.mat");
    run(&[
        "construct",
        "--family",
        "paley_conference",
        "--param",
        "q=9",
        "--out",
        mat9.to_str().unwrap(),
    ]);
    let reports = [
        stdout_json(&run(&["spectrum", "--in", mat.to_str().unwrap(), "--k", "4"])),
        stdout_json(&run(&[
            "verify-design",
            "--blocks",
            blk.to_str().unwrap(),
            "--t",
            "3",
        ])),
        stdout_json(&run(&[
            "predict",
            "--in",
            mat9.to_str().unwrap(),
            "--k",
            "4",
            "--a",
            "5",
            "--t",
            "3",
            "--reconcile",
        ])),
    ];
    for report in reports {
        let kind = report["kind"].as_str().expect("kind is a string");
        assert!(kinds.contains(&kind.to_string()), "unknown kind {kind}");
        let manifest = report["manifest"].as_object().expect("manifest object");
        for key in ["command", "arguments", "input_hashes", "tool_version", "timing_ms", "outcome"] {
            assert!(manifest.contains_key(key), "manifest is missing {key}");
        }
        if let Some(lambda) = report.get("lambda") {
            assert!(
                lambda.is_string() || lambda.is_array() || lambda.is_null(),
                "lambda values serialize as exact strings"
            );
        }
    }
}

#[test]
fn negative_minor_values_parse_on_the_command_line() {
    let mat = tmp("bord4.mat");
    run(&[
        "construct",
        "--family",
        "hadamard_bordered",
        "--param",
        "v=4",
        "--out",
        mat.to_str().unwrap(),
    ]);
    let b3 = tmp("bord4-3.blk");
    let b4 = tmp("bord4-4.blk");
    let out = run(&[
        "blocks", "--in", mat.to_str().unwrap(), "--k", "3", "--a", "-1", "--out",
        b3.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    run(&[
        "blocks", "--in", mat.to_str().unwrap(), "--k", "4", "--a", "-2", "--out",
        b4.to_str().unwrap(),
    ]);
    let out = run(&[
        "verify-pbd",
        "--blocks",
        b3.to_str().unwrap(),
        "--blocks",
        b4.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let body = stdout_json(&out);
    assert_eq!(body["kind"], "regular_pbd");
    assert_eq!(body["lambda"], "12");
    // Three-minor prediction with a negative --c on the same matrix.
    let out = run(&[
        "predict", "--in", mat.to_str().unwrap(), "--k", "4", "--a", "-2", "--scheme",
        "had3:4", "--c", "-3", "--reconcile",
    ]);
    assert!(out.status.success(), "{out:?}");
    let body = stdout_json(&out);
    assert_eq!(body["reconciliation"]["match"], true);
}

#[test]
fn reproduce_runs_registered_tables() {
    let out = run(&["reproduce", "--table", "ex:skew3", "--q", "7"]);
    assert!(out.status.success(), "{out:?}");
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("PASS"));
    assert!(!text.contains("FAIL"));
    let out = run(&["reproduce", "--table", "ex:herm", "--json", tmp("herm.json").to_str().unwrap()]);
    assert!(out.status.success());
    let body: Value =
        serde_json::from_str(&std::fs::read_to_string(tmp("herm.json")).unwrap()).unwrap();
    assert_eq!(body["kind"], "reproduce");
    assert!(body["rows"].as_array().unwrap().len() >= 4);
    let out = run(&["reproduce", "--table", "x", "--list"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("tab:hoggar"));
}

#[test]
fn scheme_files_round_trip_through_verify_pbibd() {
    let mat = tmp("bgw5.mat");
    run(&[
        "construct",
        "--family",
        "bgw_block",
        "--param",
        "q=5",
        "--out",
        mat.to_str().unwrap(),
    ]);
    let wmat = tmp("w5.mat");
    run(&[
        "construct",
        "--family",
        "bgw_from_conference",
        "--param",
        "q=5",
        "--out",
        wmat.to_str().unwrap(),
    ]);
    let blk = tmp("bgw5.blk");
    run(&[
        "blocks",
        "--in",
        mat.to_str().unwrap(),
        "--k",
        "4",
        "--a",
        "4",
        "--out",
        blk.to_str().unwrap(),
    ]);
    let out = run(&[
        "verify-pbibd",
        "--blocks",
        blk.to_str().unwrap(),
        "--scheme",
        &format!("bgw3:{}", wmat.display()),
    ]);
    assert!(out.status.success(), "{out:?}");
    let body = stdout_json(&out);
    let lambda = body["lambda"].as_array().unwrap();
    let values: Vec<&str> = lambda.iter().map(|row| row["value"].as_str().unwrap()).collect();
    assert_eq!(values, ["8", "4", "0"]);
}
