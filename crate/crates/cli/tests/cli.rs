//! End-to-end runs of the `zetaq` binary: output shape, determinism, and
//! the exit-code contract.

use std::path::PathBuf;
use std::process::{Command, Output};

fn zetaq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zetaq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is a single JSON document")
}

fn fixture(name: &str, content: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("zetaq-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

#[test]
fn count_diag_quadric() {
    let out = zetaq(&[
        "count", "--diag", "--p", "7", "--m", "2", "--coeffs", "-1,1,1,1", "--s", "1,2",
    ]);
    let v = json_of(&out);
    assert_eq!(v["command"], "count");
    assert_eq!(v["status"], "ok");
    assert_eq!(v["results"]["counts"][0]["n"], "50");
    assert_eq!(v["results"]["counts"][1]["n"], "2500");
    assert_eq!(v["config"]["p"], 7);
    assert_eq!(v["config"]["seed"], serde_json::Value::Null);
}

#[test]
fn count_from_file() {
    let path = fixture("line.poly", "5 1 projective\nX1 + X2\n");
    let out = zetaq(&["count", "--file", path.to_str().unwrap(), "--s", "1"]);
    let v = json_of(&out);
    assert_eq!(v["results"]["counts"][0]["n"], "6");
}

#[test]
fn count_empty_system_is_full_projective_space() {
    let path = fixture("empty.poly", "5 1 projective 3\n");
    let out = zetaq(&["count", "--file", path.to_str().unwrap(), "--s", "1"]);
    let v = json_of(&out);
    assert_eq!(v["results"]["counts"][0]["n"], "31");
}

#[test]
fn zeta_quartic_reports_roots_and_weil() {
    let out = zetaq(&[
        "zeta", "--p", "5", "--m", "4", "--coeffs", "1,1,1", "--order", "4",
    ]);
    let v = json_of(&out);
    let p: Vec<&str> = v["results"]["p_coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert_eq!(p, ["1", "-6", "27", "-68", "135", "-150", "125"]);
    assert_eq!(v["results"]["p_in_numerator"], true);
    assert_eq!(v["results"]["roots"].as_array().unwrap().len(), 6);
    assert_eq!(v["results"]["weil"]["pass"], true);
    assert_eq!(v["results"]["counts"][0]["n"], "0");
}

#[test]
fn zeta_csv_rows_plot_the_weil_circle() {
    let out = zetaq(&["zeta", "--p", "5", "--m", "4", "--coeffs", "1,1,1", "--csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("re,im,modulus,phase"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 6);
    for row in rows {
        let modulus: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
        assert!((modulus - 5f64.sqrt()).abs() < 1e-9);
    }
}

#[test]
fn simulate_passes_on_the_quadric() {
    let out = zetaq(&["simulate", "--p", "7", "--m", "2", "--coeffs", "-1,1,1,1"]);
    let v = json_of(&out);
    assert_eq!(v["status"], "ok");
    let delta = v["results"]["max_delta"].as_f64().unwrap();
    assert!(delta < 1e-6);
}

#[test]
fn qpe_reads_the_aligned_phase() {
    let out = zetaq(&[
        "qpe", "--p", "7", "--m", "2", "--coeffs", "-1,1,1,1", "--b", "1,1,1,1",
        "--t-bits", "8", "--samples", "100", "--seed", "5", "--dump-dist",
    ]);
    let v = json_of(&out);
    let theta = v["results"]["theta_hat"].as_f64().unwrap();
    assert!((theta - std::f64::consts::PI).abs() < 1e-12);
    let dist = v["results"]["distribution"].as_array().unwrap();
    assert_eq!(dist.len(), 256);
}

#[test]
fn estimate_recovers_the_exact_count() {
    let out = zetaq(&[
        "estimate", "--p", "7", "--m", "2", "--coeffs", "-1,1,1,1", "--s", "1",
        "--t-bits", "8", "--seed", "3",
    ]);
    let v = json_of(&out);
    let row = &v["results"]["estimates"][0];
    assert_eq!(row["estimate"], "50");
    assert_eq!(row["exact"], "50");
    assert!(row["error_bar"].as_f64().unwrap() > 0.0);
}

#[test]
fn orbits_verdicts_for_the_three_local_factors() {
    for (p, expected) in [(2u64, vec!["1", "0", "0"]), (3, vec!["0", "1", "0"]), (5, vec!["2", "0", "0"])] {
        let path = fixture(&format!("x2p1_f{p}.poly"), &format!("{p} 1 affine\nX1^2 + 1\n"));
        let out = zetaq(&[
            "orbits", "--file", path.to_str().unwrap(), "--order", "3",
        ]);
        let v = json_of(&out);
        assert_eq!(v["status"], "ok", "p={p}");
        assert_eq!(v["results"]["verdict"], "pass");
        let b: Vec<&str> = v["results"]["orbits"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["b"].as_str().unwrap())
            .collect();
        assert_eq!(b, expected, "p={p}");
    }
}

#[test]
fn identical_configs_give_byte_identical_output() {
    let args = [
        "estimate", "--p", "5", "--m", "4", "--coeffs", "1,1,1", "--s", "1",
        "--t-bits", "9", "--seed", "11", "--samples", "3",
    ];
    let a = zetaq(&args);
    let b = zetaq(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes_follow_the_contract() {
    // Validation failure: q not 1 mod m.
    let out = zetaq(&["zeta", "--p", "7", "--m", "4", "--coeffs", "1,1,1"]);
    assert_eq!(out.status.code(), Some(2));

    // Parse error in a file.
    let path = fixture("bad.poly", "5 1 projective\nX0 + ?\n");
    let out = zetaq(&["count", "--file", path.to_str().unwrap(), "--s", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("line 2"), "stderr: {msg}");

    // Resource cap.
    let out = zetaq(&[
        "count", "--diag", "--p", "7", "--m", "2", "--coeffs", "-1,1,1,1", "--s", "1",
        "--cap", "10",
    ]);
    assert_eq!(out.status.code(), Some(4));

    // Unknown flags are clap usage errors.
    let out = zetaq(&["count", "--nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_flag_writes_the_report_to_disk() {
    let dir = std::env::temp_dir().join("zetaq-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("count-report.json");
    let out = zetaq(&[
        "count", "--diag", "--p", "5", "--m", "4", "--coeffs", "1,1,1", "--s", "1",
        "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["results"]["counts"][0]["n"], "0");
}
