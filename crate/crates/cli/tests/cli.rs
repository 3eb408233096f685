//! Black-box behavior of the `spir` binary: exit-code contract, JSON
//! round-trips, determinism.

use std::process::{Command, Output};

use spir_core::capacity::CapacityReport;

fn spir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spir"))
        .args(args)
        .output()
        .expect("binary runs")
}

const WORKED: &str =
    r#"{"n": 5, "collusion": [[1,2],[1,4],[2,4],[3,4],[5]], "eavesdropping": [[1,2,3],[2,4],[5]]}"#;

#[test]
fn capacity_table_shows_exact_values() {
    let out = spir(&["capacity", "--pattern", WORKED, "--rho", "3/5"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("F*                8/3"));
    assert!(text.contains("capacity          5/8"));
    assert!(text.contains("rho threshold     3/5"));
    assert!(text.contains("achievable"));
}

#[test]
fn capacity_json_round_trips_through_the_loader() {
    let out = spir(&["capacity", "--pattern", WORKED, "--rho", "3/5", "--format", "json"]);
    assert!(out.status.success());
    let first = String::from_utf8(out.stdout).unwrap();
    let report: CapacityReport = serde_json::from_str(&first).unwrap();
    let reserialized = serde_json::to_string_pretty(&report).unwrap();
    assert_eq!(first.trim_end(), reserialized);
}

#[test]
fn full_set_pattern_exits_2() {
    let out = spir(&[
        "capacity",
        "--pattern",
        r#"{"n": 3, "collusion": [[1,2,3]], "eavesdropping": []}"#,
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("set of all 3 servers"), "stderr: {err}");
}

#[test]
fn malformed_pattern_exits_2() {
    let out = spir(&["capacity", "--pattern", r#"{"n": 3, "collusion": [[0,4]]}"#]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rho_rejects_floats() {
    let out = spir(&["capacity", "--pattern", WORKED, "--rho", "0.6"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("floating point"), "stderr: {err}");
}

#[test]
fn insufficient_rho_exits_3() {
    let out = spir(&["scheme", "--pattern", WORKED, "--rho", "1/2", "--k", "3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn uncovered_servers_are_reported_as_added_singletons() {
    let out = spir(&[
        "capacity",
        "--pattern",
        r#"{"n": 4, "collusion": [[1,2]], "eavesdropping": []}"#,
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("added singletons  {3}, {4}"), "{text}");
}

#[test]
fn simulate_prints_exact_rate_last() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("transcripts.json");
    let out = spir(&[
        "simulate",
        "--pattern",
        WORKED,
        "--force-threshold",
        "--k",
        "3",
        "--seed",
        "9",
        "--trials",
        "6",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim_end().lines().last().unwrap(), "5/8");

    let transcripts: Vec<spir_core::Transcript> =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(transcripts.len(), 6);
    assert!(transcripts.iter().all(|t| t.modulus == 11));
}

#[test]
fn simulate_is_deterministic_for_a_seed() {
    let run = || {
        let out = spir(&[
            "simulate", "--pattern", WORKED, "--force-threshold", "--k", "3", "--seed", "1234",
            "--trials", "4",
        ]);
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(run(), run());
}

#[test]
fn verify_passes_on_micro_and_fails_nothing() {
    let out = spir(&[
        "verify",
        "--pattern",
        r#"{"n": 2, "collusion": [[1],[2]], "eavesdropping": [[1],[2]]}"#,
        "--force-threshold",
        "--trials",
        "25",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["pass"], true);
    let certs = json["certificates"].as_array().unwrap();
    assert!(certs.iter().any(|c| c["method"] == "exhaustive" && c["result"] == "pass"));
    assert!(!certs.iter().any(|c| c["result"] == "fail"));
}

#[test]
fn verify_skips_exhaustive_over_budget() {
    let out = spir(&[
        "verify", "--pattern", WORKED, "--force-threshold", "--k", "3", "--trials", "10",
        "--format", "json",
    ]);
    assert!(out.status.success(), "skips must not fail the run");
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let certs = json["certificates"].as_array().unwrap();
    assert!(certs
        .iter()
        .any(|c| c["result"].as_str().unwrap().starts_with("skipped")));
}

#[test]
fn selftest_passes_and_is_reproducible() {
    let run = || {
        let out = spir(&["selftest", "--trials", "30", "--seed", "5", "--max-n", "5"]);
        (out.status.code(), out.stdout)
    };
    let (code_a, out_a) = run();
    let (code_b, out_b) = run();
    assert_eq!(code_a, Some(0));
    assert_eq!(out_a, out_b);
    let text = String::from_utf8(out_a).unwrap();
    assert!(text.contains("selftest: PASS"));
}

#[test]
fn stdin_pattern_works() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_spir"))
        .args(["capacity", "--pattern", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(WORKED.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("8/3"));
}
