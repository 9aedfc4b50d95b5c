//! End-to-end tests of the `fflab` binary: exchange formats, exit codes,
//! determinism, and the documented command behaviors.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn fflab() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fflab"))
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = fflab()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawning fflab");
    child
        .stdin
        .as_mut()
        .expect("stdin piped")
        .write_all(stdin.as_bytes())
        .expect("writing stdin");
    child.wait_with_output().expect("waiting for fflab")
}

fn stdout_str(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn roots_of_coefficient_input() {
    let out = run_with_stdin(&["roots"], r#"{"coeffs":[1,0,-1]}"#);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    let roots: Vec<f64> = v["roots"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert_eq!(roots, vec![1.0, -1.0]);
}

#[test]
fn convolve_known_pair() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    std::fs::write(&path, r#"{"roots":[1,-1]}"#).unwrap();
    let out = fflab()
        .args(["convolve", path.to_str().unwrap(), path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    let coeffs: Vec<f64> = v["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert_eq!(coeffs.len(), 3);
    assert!((coeffs[0] - 1.0).abs() < 1e-15);
    assert!(coeffs[1].abs() < 1e-15);
    assert!((coeffs[2] + 2.0).abs() < 1e-12);
}

#[test]
fn heatflow_round_trips_through_negative_time() {
    let forward = run_with_stdin(
        &["heatflow", "--time", "0.75"],
        r#"{"roots":[2.0,0.5,-1.0,-1.5]}"#,
    );
    assert!(forward.status.success());
    let back = run_with_stdin(
        &["heatflow", "--time", "-0.75"],
        stdout_str(&forward).trim(),
    );
    assert!(back.status.success());
    let v: Value = serde_json::from_str(stdout_str(&back).trim()).unwrap();
    let coeffs: Vec<f64> = v["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    // Original polynomial: (x−2)(x−1/2)(x+1)(x+3/2).
    let expect = [1.0, 0.0, -3.75, -1.25, 1.5];
    for (c, e) in coeffs.iter().zip(expect.iter()) {
        assert!((c - e).abs() < 1e-10, "{c} vs {e}");
    }
}

#[test]
fn information_functionals_match_frozen_values() {
    // Φ({1,0,−1}) = 3/2, χ({1,0,−1}) = ln(2)/3, N({1,−1}) = 4.
    let fisher = run_with_stdin(&["fisher"], r#"{"roots":[1,0,-1]}"#);
    assert!(fisher.status.success());
    let phi: f64 = stdout_str(&fisher).trim().parse().unwrap();
    assert!((phi - 1.5).abs() < 1e-12);

    let entropy = run_with_stdin(&["entropy"], r#"{"roots":[1,0,-1]}"#);
    let chi: f64 = stdout_str(&entropy).trim().parse().unwrap();
    assert!((chi - 2.0f64.ln() / 3.0).abs() < 1e-12);

    let epower = run_with_stdin(&["epower"], r#"{"roots":[1,-1]}"#);
    let n: f64 = stdout_str(&epower).trim().parse().unwrap();
    assert!((n - 4.0).abs() < 1e-12);
}

#[test]
fn entropy_integral_route_agrees_with_direct() {
    let direct = run_with_stdin(&["entropy"], r#"{"roots":[1.7,0.3,-0.9,-1.1]}"#);
    let via_flow = run_with_stdin(
        &["entropy", "--integral", "--t-max", "150"],
        r#"{"roots":[1.7,0.3,-0.9,-1.1]}"#,
    );
    assert!(direct.status.success() && via_flow.status.success());
    let a: f64 = stdout_str(&direct).trim().parse().unwrap();
    let b: f64 = stdout_str(&via_flow).trim().parse().unwrap();
    assert!((a - b).abs() < 1e-3, "{a} vs {b}");
}

#[test]
fn score_is_aligned_with_descending_roots() {
    let out = run_with_stdin(&["score"], r#"{"roots":[1,0,-1]}"#);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    let score: Vec<f64> = v["score"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert!((score[0] - 1.5).abs() < 1e-10);
    assert!(score[1].abs() < 1e-10);
    assert!((score[2] + 1.5).abs() < 1e-10);
}

#[test]
fn degree_constant_matches_frozen_value() {
    let out = fflab().args(["cn", "--degree", "3"]).output().unwrap();
    assert!(out.status.success());
    let c: f64 = stdout_str(&out).trim().parse().unwrap();
    assert!((c + 0.2593655663192146).abs() < 1e-12);

    let bad = fflab().args(["cn", "--degree", "2"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn malformed_input_exits_2() {
    for text in ["not json", r#"{"roots":[]}"#, r#"{"coeffs":[0,1]}"#] {
        let out = run_with_stdin(&["roots"], text);
        assert_eq!(out.status.code(), Some(2), "input: {text}");
    }
}

#[test]
fn non_real_rooted_input_exits_3() {
    let out = run_with_stdin(&["roots"], r#"{"coeffs":[1,0,1]}"#);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn check_emits_json_report_and_succeeds() {
    let out = fflab()
        .args([
            "check", "--suite", "stam", "--trials", "6", "--degree", "4", "--seed", "11",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["suite"], "stam");
    assert_eq!(reports[0]["failures"], 0);
    assert_eq!(reports[0]["margins"].as_array().unwrap().len(), 6);
}

#[test]
fn check_all_suites_in_csv_format() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = fflab()
        .args([
            "check",
            "--trials",
            "3",
            "--degree",
            "4",
            "--format",
            "csv",
            "--out",
            path.to_str().unwrap(),
        ])
        .env("FFLAB_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "suite,trial,margin,skipped");
    // 6 suites × 3 trials, with lieb contributing 5 rows per trial and the
    // flow-derivative suite 3: 4·3 + 15 + 9 = 36 margin rows.
    assert_eq!(lines.len(), 1 + 36);
}

#[test]
fn check_reports_are_deterministic_across_runs_and_threads() {
    let args = [
        "check", "--suite", "lieb", "--trials", "4", "--degree", "4", "--seed", "3",
    ];
    let first = fflab().args(args).env("FFLAB_THREADS", "1").output().unwrap();
    let second = fflab().args(args).env("FFLAB_THREADS", "4").output().unwrap();
    let a: Value = serde_json::from_str(stdout_str(&first).trim()).unwrap();
    let b: Value = serde_json::from_str(stdout_str(&second).trim()).unwrap();
    // Wall time varies; the mathematical payload must not.
    assert_eq!(a[0]["margins"], b[0]["margins"]);
    assert_eq!(a[0]["min_margin"], b[0]["min_margin"]);
}

#[test]
fn check_rejects_unknown_names() {
    let bad_suite = fflab()
        .args(["check", "--suite", "nonsense", "--trials", "1"])
        .output()
        .unwrap();
    assert_eq!(bad_suite.status.code(), Some(2));

    let bad_ensemble = fflab()
        .args(["check", "--ensemble", "nonsense", "--trials", "1"])
        .output()
        .unwrap();
    assert_eq!(bad_ensemble.status.code(), Some(2));
}

#[test]
fn trajectory_rows_and_residuals() {
    let out = run_with_stdin(
        &["trajectory", "--t-max", "0.5", "--steps", "4"],
        r#"{"roots":[1.5,0.0,-1.5]}"#,
    );
    assert!(out.status.success());
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,root_index,value,score_residual");
    // (steps + 1) time points × 3 roots.
    assert_eq!(lines.len(), 1 + 5 * 3);
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 4);
        let residual: f64 = fields[3].parse().unwrap();
        assert!(residual < 1e-6, "score residual too large: {line}");
    }
}

#[test]
fn outputs_round_trip_between_commands() {
    // roots → convolve: feed a roots-form output back as an input.
    let roots_out = run_with_stdin(&["roots"], r#"{"coeffs":[1,0,-4]}"#);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q.json");
    std::fs::write(&path, stdout_str(&roots_out).trim()).unwrap();
    let conv = fflab()
        .args(["convolve", path.to_str().unwrap(), path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(conv.status.success());
    // (x−2)(x+2) ⊞ itself = x² − 8.
    let v: Value = serde_json::from_str(stdout_str(&conv).trim()).unwrap();
    let coeffs: Vec<f64> = v["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert!((coeffs[2] + 8.0).abs() < 1e-12);
}
