//! End-to-end checks of the binary: exit-code contract, JSON output shape,
//! fixture round-trips and deterministic classify output.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holotube"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

#[test]
fn tube_check_inside_exit_zero() {
    let out = run(&["tube-check", "--input", fixture("tube_interior.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["state"], "inside");
}

#[test]
fn tube_check_real_configuration_is_boundary() {
    let out = run(&["tube-check", "--input", fixture("real_pair.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["state"], "boundary");
}

#[test]
fn truncated_input_is_exit_64_with_position() {
    let out = run(&["tube-check", "--input", fixture("truncated.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(64));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line"), "stderr should carry a position: {stderr}");
}

#[test]
fn etube_check_emits_lambda_certificate() {
    let out = run(&["etube-check", "--input", fixture("jost_pair.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["state"], "inside");
    assert!(doc["certificate"]["lambda"].is_array());
}

#[test]
fn etube_check_search_mode_for_s4() {
    let out = run(&["etube-check", "--input", fixture("spacelike_s4.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert!(doc["certificate"]["matrix"].is_array());
}

#[test]
fn etube_check_exact_flag_rejects_s4() {
    let out = run(&[
        "etube-check",
        "--exact",
        "--input",
        fixture("spacelike_s4.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn union_check_finds_permutation() {
    let out = run(&["union-check", "--input", fixture("reorder_m3.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["certificate"]["permutation"], serde_json::json!([1, 3, 2]));
}

#[test]
fn union_check_exhausts_timelike_triple() {
    let out = run(&["union-check", "--input", fixture("timelike_triple.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["state"], "outside");
}

#[test]
fn union_check_rejects_s4() {
    let out = run(&["union-check", "--input", fixture("spacelike_s4.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn jost_check_pair() {
    let out = run(&["jost-check", "--input", fixture("jost_pair.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert!(doc["certificate"]["lambda"].is_array());
}

#[test]
fn jost_check_sampling_mode_reports_witness_or_unknown() {
    let out = run(&["jost-check", "--input", fixture("spacelike_s4.json").to_str().unwrap()]);
    // single spacelike ray: sampling cannot find a violation
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stdout_json(&out)["state"], "unknown");
}

#[test]
fn classify_table_examples() {
    let out = run(&["classify", "--s", "4", "--m-max", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let intermediate: Vec<&str> = text.lines().filter(|l| l.contains("intermediate")).collect();
    assert_eq!(intermediate.len(), 3);
    assert!(intermediate[0].starts_with("   6"));

    let out = run(&["classify", "--s", "3", "--m-max", "6"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.contains("intermediate")).count(), 1);

    let out = run(&["classify", "--s", "2", "--m-max", "4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.contains("intermediate")).count(), 0);
}

#[test]
fn classify_output_is_byte_stable() {
    let a = run(&["classify", "--s", "4", "--m-max", "9"]);
    let b = run(&["classify", "--s", "4", "--m-max", "9"]);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["classify", "--s", "3", "--m-max", "8", "--format", "json"]);
    let b = run(&["classify", "--s", "3", "--m-max", "8", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn classify_rejects_bad_flags() {
    let out = run(&["classify", "--s", "1", "--m-max", "5"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn horn_solve_prints_model() {
    let out = run(&["horn", "solve", "--input", fixture("simple.horn").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "a\nb\n");
}

#[test]
fn horn_solve_unsat() {
    let out = run(&["horn", "solve", "--input", fixture("unsat.horn").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "UNSAT\n");
}

#[test]
fn horn_solve_rejects_non_horn_with_line_number() {
    let out = run(&["horn", "solve", "--input", fixture("non_horn.horn").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(64));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line 2"), "stderr: {stderr}");
}

#[test]
fn fixture_configs_roundtrip_exactly() {
    for name in [
        "tube_interior.json",
        "real_pair.json",
        "jost_pair.json",
        "reorder_m3.json",
        "timelike_triple.json",
        "spacelike_s4.json",
    ] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        let reserialized = serde_json::to_string(&parsed).unwrap();
        let reparsed: serde_json::Value = serde_json::from_str(&reserialized).unwrap();
        assert_eq!(parsed, reparsed, "{name}");
    }
}

#[test]
fn selftest_quick_is_deterministic() {
    let a = run(&["selftest", "--quick", "--seed", "7"]);
    let b = run(&["selftest", "--quick", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, b.stdout, "summary bytes must be identical across runs");
}
