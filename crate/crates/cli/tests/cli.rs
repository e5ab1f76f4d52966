//! End-to-end checks of the binary: golden outputs, exit codes, streaming
//! formats, and determinism.

use std::process::{Command, Output};

fn repclus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repclus"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_lines(out: &Output) -> Vec<String> {
    String::from_utf8_lossy(&out.stdout).lines().map(str::to_string).collect()
}

#[test]
fn check_reports_missing_connector() {
    let out = repclus(&["--n", "3", "--p", "3", "check", "--set", "2,5,1;4,6,3"]);
    assert!(out.status.success());
    let lines = stdout_lines(&out);
    let report: serde_json::Value = serde_json::from_str(&lines[0]).unwrap();
    assert_eq!(report["ptolemy"], false);
    assert_eq!(report["size"], 2);
    let violation: serde_json::Value = serde_json::from_str(&lines[1]).unwrap();
    assert_eq!(violation["missing"], serde_json::json!([[2, 4, 1]]));
}

#[test]
fn check_rigid_not_cluster_tilting() {
    let out = repclus(&["--n", "3", "--p", "4", "check", "--set", "1,3,1;2,4,3"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout_lines(&out)[0]).unwrap();
    assert_eq!(report["rigid"], true);
    assert_eq!(report["cluster_tilting"], false);
}

#[test]
fn enumerate_count_only_prints_a_single_integer() {
    let out = repclus(&["--n", "1", "--p", "1", "enumerate", "ptolemy", "--count-only"]);
    assert!(out.status.success());
    assert_eq!(stdout_lines(&out), vec!["4"]);
    // summary footer goes to stderr
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("# "));
}

#[test]
fn enumerate_streams_json_lines() {
    let out = repclus(&["--n", "1", "--p", "2", "enumerate", "torsion-pairs"]);
    assert!(out.status.success());
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 16);
    for line in &lines {
        let pair: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(pair.get("torsion").is_some() && pair.get("free").is_some());
    }
}

#[test]
fn enumerate_orbit_reduction() {
    let out = repclus(&["--n", "1", "--p", "2", "enumerate", "ptolemy", "--orbits", "rho"]);
    assert!(out.status.success());
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 10);
    let first: serde_json::Value = serde_json::from_str(&lines[0]).unwrap();
    assert_eq!(first["orbit_size"], 1);
}

#[test]
fn closure_and_perp_roundtrip() {
    let out = repclus(&["--n", "3", "--p", "3", "closure", "--set", "2,5,1;1,3,2"]);
    assert!(out.status.success());
    assert_eq!(stdout_lines(&out)[0], "[[2,5,1],[3,5,1],[1,3,2]]");

    let out = repclus(&[
        "--n", "1", "--p", "1", "perp", "--side", "right", "--kind", "hom", "--set", "2,4,1",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_lines(&out)[0], "[[1,3,1]]");
}

#[test]
fn torsion_pair_of_non_ptolemy_set_exits_1_with_diagnostics() {
    let out = repclus(&["--n", "3", "--p", "3", "torsion-pair", "--set", "2,5,1;4,6,3"]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("[[2,4,1]]"), "diagnostics payload names the connector");
}

#[test]
fn usage_errors_exit_2() {
    // malformed set
    let out = repclus(&["--n", "3", "--p", "3", "check", "--set", "2,5"]);
    assert_eq!(out.status.code(), Some(2));
    // duplicate triples
    let out = repclus(&["--n", "3", "--p", "3", "check", "--set", "2,5,1;2,5,1"]);
    assert_eq!(out.status.code(), Some(2));
    // unknown flag value (clap)
    let out = repclus(&["--n", "3", "--p", "3", "quiver", "--format", "svg"]);
    assert_eq!(out.status.code(), Some(2));
    // invalid mode for the target
    let out = repclus(&["--n", "1", "--p", "1", "enumerate", "ptolemy", "--mode", "structural"]);
    assert_eq!(out.status.code(), Some(2));
    // bad n
    let out = repclus(&["--n", "0", "--p", "1", "list-diagonals"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_all_passes_on_small_params() {
    let out = repclus(&["--n", "2", "--p", "2", "verify", "all"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 3);
    for line in lines {
        let report: serde_json::Value = serde_json::from_str(&line).unwrap();
        assert_eq!(report["mismatches"], serde_json::json!([]));
    }
}

#[test]
fn verify_reports_p1_divergence_without_failing() {
    let out = repclus(&["--n", "1", "--p", "1", "verify", "perp"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout_lines(&out)[0]).unwrap();
    assert!(!report["expected_divergences"].as_array().unwrap().is_empty());
}

#[test]
fn list_diagonals_canonical_order() {
    let out = repclus(&["--n", "1", "--p", "2", "list-diagonals"]);
    assert_eq!(stdout_lines(&out), vec!["[1,3,1]", "[2,4,1]", "[1,3,2]", "[2,4,2]"]);
}

#[test]
fn quiver_json_round_trips_through_export() {
    let out = repclus(&["--n", "3", "--p", "3", "quiver", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_lines(&out)[0]).unwrap();
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 27);
    assert_eq!(doc["translation"].as_array().unwrap().len(), 27);
}

#[test]
fn draw_is_deterministic_and_writes_files() {
    let args = ["--n", "3", "--p", "4", "draw", "--set", "1,3,1;2,4,3", "--format", "svg"];
    let first = repclus(&args);
    let second = repclus(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "same input must render byte-identically");
    assert_eq!(
        String::from_utf8_lossy(&first.stdout).matches("class=\"diagonal\"").count(),
        2
    );

    let dir = std::env::temp_dir().join("repclus-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("figure.tikz");
    let out = repclus(&[
        "--n", "3", "--p", "3", "draw", "--set", "", "--format", "tikz", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("\\begin{tikzpicture}"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn worker_env_var_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_repclus"))
        .args(["--n", "1", "--p", "1", "enumerate", "ptolemy"])
        .env("REPCLUS_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = Command::new(env!("CARGO_BIN_EXE_repclus"))
        .args(["--n", "1", "--p", "1", "enumerate", "ptolemy", "--count-only"])
        .env("REPCLUS_THREADS", "3")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(stdout_lines(&out), vec!["4"]);
}
