//! End-to-end tests against the compiled binary: exit codes, output
//! formats, and the published-value checks exposed through the CLI.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_expwell"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn json_stdout(out: &Output) -> Value {
    serde_json::from_str(&stdout_str(out)).expect("json stdout")
}

#[test]
fn table1_reproduces_all_sixteen_levels() {
    let out = run(&["table1"]);
    assert!(out.status.success(), "stderr: {}", stderr_str(&out));
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "molecule,branch,n,computed_ev,published_ev,abs_diff_ev");
    assert_eq!(lines.len(), 17, "header + 16 rows");
    for line in &lines[1..] {
        let abs_diff: f64 = line.split(',').next_back().unwrap().parse().unwrap();
        assert!(abs_diff <= 5e-3, "row out of tolerance: {line}");
    }
}

#[test]
fn table1_with_wrong_alpha_registry_fails() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(
        file,
        r#"{{"H2": {{"D_eV": 4.7446, "r0_angstrom": 0.7416, "alpha": 1.9,
            "E0_eV": 1.508343932e-2, "mass_amu": 0.50391}}}}"#
    )
    .unwrap();
    let out = run(&["table1", "--registry", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "wrong alpha must breach 5e-3 eV");
}

#[test]
fn unknown_molecule_is_a_usage_error() {
    let out = run(&["spectrum", "--molecule", "Xx", "--branch", "morse", "--levels", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("unknown molecule"));
}

#[test]
fn spectrum_json_single_level_lih() {
    let out = run(&[
        "spectrum", "--molecule", "LiH", "--branch", "exp", "--levels", "0", "--format", "json",
    ]);
    assert!(out.status.success());
    let doc = json_stdout(&out);
    let keys: Vec<&String> = doc.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["command", "inputs", "pass", "rows"]);
    assert_eq!(doc["command"], "spectrum");
    assert_eq!(doc["inputs"]["molecule"], "LiH");
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    let energy = rows[0]["energy"].as_f64().unwrap();
    assert!((energy - (-2.60322)).abs() <= 5e-3, "E = {energy}");
    assert_eq!(rows[0]["physical"], false, "rising-well levels are formal");
}

#[test]
fn wavefn_ground_state_is_normalized_and_single_peaked() {
    let out = run(&[
        "wavefn", "--molecule", "H2", "--branch", "morse", "--n", "0", "--x-min", "-1",
        "--format", "json",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr_str(&out));
    let doc = json_stdout(&out);
    assert_eq!(doc["inputs"]["normalized"], true);
    assert_eq!(doc["inputs"]["formal"], false);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 500);
    let xs: Vec<f64> = rows.iter().map(|r| r["x"].as_f64().unwrap()).collect();
    let phis: Vec<f64> = rows.iter().map(|r| r["phi"].as_f64().unwrap()).collect();
    // positive, unit-norm, single-peaked profile
    assert!(phis.iter().all(|&p| p >= 0.0));
    let mut trapezoid = 0.0;
    for i in 0..xs.len() - 1 {
        trapezoid += (phis[i] * phis[i] + phis[i + 1] * phis[i + 1]) / 2.0 * (xs[i + 1] - xs[i]);
    }
    assert!(
        (trapezoid - 1.0).abs() <= 1e-6,
        "trapezoid norm on emitted samples = {trapezoid}"
    );
    let mut strict_maxima = 0;
    for i in 1..phis.len() - 1 {
        if phis[i] > phis[i - 1] && phis[i] > phis[i + 1] {
            strict_maxima += 1;
        }
    }
    assert_eq!(strict_maxima, 1, "ground state must have exactly one peak");
}

#[test]
fn wavefn_n3_has_exactly_three_sign_changes() {
    let out = run(&["wavefn", "--molecule", "H2", "--branch", "morse", "--n", "3"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    let phis: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    let sign_changes =
        (1..phis.len()).filter(|&i| phis[i - 1] * phis[i] < 0.0).count();
    assert_eq!(sign_changes, 3);
}

#[test]
fn normalized_formal_state_is_refused() {
    let out =
        run(&["wavefn", "--molecule", "H2", "--branch", "exp", "--n", "0", "--normalized"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_str(&out).contains("diverg"), "stderr: {}", stderr_str(&out));
}

#[test]
fn output_is_byte_stable_across_runs() {
    let a = run(&["table1", "--format", "json"]);
    let b = run(&["table1", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["wavefn", "--molecule", "LiH", "--branch", "morse", "--n", "2"]);
    let d = run(&["wavefn", "--molecule", "LiH", "--branch", "morse", "--n", "2"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn verify_series_passes_without_su2_report() {
    let out = run(&["verify", "--suites", "series", "--format", "json"]);
    assert!(out.status.success());
    let doc = json_stdout(&out);
    assert_eq!(doc["pass"], true);
    assert!(doc.get("su2").is_none());
    assert!(!doc["rows"].as_array().unwrap().is_empty());
}

#[test]
fn verify_su2_attaches_the_ladder_report() {
    let out = run(&["verify", "--suites", "su2", "--format", "json"]);
    assert!(out.status.success());
    let doc = json_stdout(&out);
    assert_eq!(doc["pass"], true);
    let rows = doc["su2"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 11);
    assert_eq!(doc["su2"]["published_structure_constant"], 1.0);
}

#[test]
fn verify_rejects_unknown_suite() {
    let out = run(&["verify", "--suites", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("unknown suite"));
}

#[test]
fn oracle_compare_ground_state_json() {
    let out =
        run(&["oracle-compare", "--molecule", "H2", "--levels", "0", "--format", "json"]);
    assert!(out.status.success());
    let doc = json_stdout(&out);
    assert_eq!(doc["pass"], true);
    let diff = doc["rows"][0]["difference"].as_f64().unwrap();
    assert!(diff.abs() <= 2e-3, "difference = {diff}");
}
