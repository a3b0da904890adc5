use std::path::Path;
use std::process::{Command, Output};

use nctrace_cli::ReportFile;
use serde_json::Value;

fn nctrace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nctrace"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(dir: &Path, suite: &str) -> ReportFile {
    let text = std::fs::read_to_string(dir.join(format!("{suite}.json"))).expect("report written");
    serde_json::from_str(&text).expect("report parses")
}

fn write_zoo(dir: &Path, zoo: Value) -> String {
    let path = dir.join("zoo.json");
    std::fs::write(&path, zoo.to_string()).unwrap();
    path.display().to_string()
}

#[test]
fn lefschetz_reports_are_byte_stable() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let out = nctrace(&["verify", "lefschetz", "--out", dir.path().to_str().unwrap(), "--jobs", "2"]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let ra = report(a.path(), "lefschetz").report;
    let rb = report(b.path(), "lefschetz").report;
    assert_eq!(serde_json::to_string(&ra).unwrap(), serde_json::to_string(&rb).unwrap());
    assert_eq!(ra.schema, "nctrace-report/1");
    let summary: Value =
        serde_json::from_str(&std::fs::read_to_string(a.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["status"], "pass");
}

#[test]
fn every_case_carries_both_sides_and_a_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let out = nctrace(&["verify", "hrr", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("hrr.json")).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    let cases = v["report"]["cases"].as_array().unwrap();
    assert!(cases.len() >= 20);
    for c in cases {
        let obj = c.as_object().unwrap();
        assert!(obj.contains_key("lhs") && obj.contains_key("rhs") && obj.contains_key("verdict"));
    }
    assert_eq!(v["header"]["case_wall_ms"].as_array().unwrap().len(), cases.len());
}

#[test]
fn wrong_expected_value_fails_and_names_the_case() {
    let dir = tempfile::tempdir().unwrap();
    let zoo = write_zoo(
        dir.path(),
        serde_json::json!({"entries": [{
            "name": "kxk_swap_wrong",
            "kind": "bimodule",
            "algebra": "kxk",
            "bimodule": {"twist": "swap"},
            "vanish_bound": 1,
            "expected": {"value": "2", "provenance": "trivial"}
        }]}),
    );
    let out = nctrace(&["verify", "lefschetz", "--zoo", &zoo, "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("kxk_swap_wrong"), "{stdout}");
    let r = report(dir.path(), "lefschetz").report;
    assert_eq!(r.cases[0].lhs.as_deref(), Some("0"));
}

#[test]
fn empty_zoo_passes_vacuously() {
    let dir = tempfile::tempdir().unwrap();
    let zoo = write_zoo(dir.path(), serde_json::json!({"entries": []}));
    let out = nctrace(&["verify", "all", "--zoo", &zoo, "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    for suite in ["lefschetz", "hrr", "grr", "eq12", "properties"] {
        assert!(report(dir.path(), suite).report.cases.is_empty());
    }
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = nctrace(&["verify", "bogus", "--out", d]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lefschetz, hrr, grr, eq12, properties, all"));
    assert_eq!(nctrace(&["verify", "hrr", "--field", "Fp:4", "--out", d]).status.code(), Some(2));
    assert_eq!(nctrace(&["verify", "hrr", "--zoo", "/nonexistent.json", "--out", d]).status.code(), Some(2));
    assert_eq!(nctrace(&["verify", "hrr", "--case", "nope", "--out", d]).status.code(), Some(2));
    assert_eq!(nctrace(&["zoo", "describe", "nope"]).status.code(), Some(2));
    let bad = write_zoo(
        dir.path(),
        serde_json::json!({"entries": [{"name": "x", "kind": "bimodule", "algebra": "kxk",
            "bimodule": {"twist": "no_such_twist"}}]}),
    );
    assert_eq!(nctrace(&["verify", "lefschetz", "--zoo", &bad, "--out", d]).status.code(), Some(2));
}

#[test]
fn prime_field_run_agrees_with_rationals() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    for suite in ["lefschetz", "hrr"] {
        let out = nctrace(&["verify", suite, "--field", "Fp:5", "--out", d]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
        assert_eq!(report(dir.path(), suite).report.field, "Fp:5");
    }
    let r = report(dir.path(), "hrr").report;
    // χ(S2, S1) = -1 reduces to 4
    assert_eq!(r.case("A2_S2_S1").unwrap().lhs.as_deref(), Some("4"));
}

#[test]
fn single_case_selection() {
    let dir = tempfile::tempdir().unwrap();
    let out = nctrace(&["verify", "hrr", "--case", "A2_S2_S1", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let names: Vec<String> = report(dir.path(), "hrr").report.cases.into_iter().map(|c| c.name).collect();
    assert_eq!(names, ["A2_S2_S1", "A2_S2_S1/oracle"]);
}

#[test]
fn zoo_listing_and_description() {
    let out = nctrace(&["zoo", "list"]);
    let text = String::from_utf8_lossy(&out.stdout);
    for name in ["A2_quiver", "kxkxk_cycle", "dual_numbers", "P1xP1_diag", "P2_O(-2)xO(2)"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{name} missing");
    }
    let out = nctrace(&["zoo", "describe", "kxkxk_cycle"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["vanish_bound"], 1);
    assert_eq!(v["expected"]["value"], "0");
    let out = nctrace(&["zoo", "describe", "P1_diag"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["expected"]["value"], "2");
}

#[test]
fn example_zoo_file_passes() {
    let dir = tempfile::tempdir().unwrap();
    let zoo = concat!(env!("CARGO_MANIFEST_DIR"), "/../../zoo/example.json");
    let out = nctrace(&["verify", "all", "--zoo", zoo, "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}
