use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

const DIAMOND: &str = r#"{"elements": ["0","a","b","1"], "covers": [["0","a"],["0","b"],["a","1"],["b","1"]]}"#;
const CHAIN2: &str = r#"{"elements": ["0","1"], "covers": [["0","1"]]}"#;
const CROWN: &str = r#"{"elements": ["x1","x2","x3","y1","y2","y3"],
  "covers": [["x1","y1"],["x1","y2"],["x2","y2"],["x2","y3"],["x3","y3"],["x3","y1"]]}"#;

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn epsilon_file(dir: &TempDir, a: &str, b: &str) -> PathBuf {
    let text = format!(
        r#"{{"poset": {DIAMOND}, "lambda": {{"0":"1","1":"0","a":"a","b":"b"}}, "epsilon": {{"a":"{a}","b":"{b}"}}}}"#
    );
    write(dir, &format!("rho_{a}_{b}.json"), &text)
}

/// Runs the binary; returns the exit code and the parsed stdout (if any).
fn run(args: &[&Path]) -> (i32, Option<Value>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fi-involutions")).args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let stderr = String::from_utf8(out.stderr).unwrap();
    (out.status.code().unwrap(), serde_json::from_str(&stdout).ok(), stderr)
}

fn p(s: &str) -> &Path {
    Path::new(s)
}

#[test]
fn validate_diamond() {
    let dir = TempDir::new().unwrap();
    let poset = write(&dir, "diamond.json", DIAMOND);
    let (code, report, _) = run(&[p("validate"), &poset]);
    let report = report.unwrap();
    assert_eq!(code, 0);
    assert_eq!(report["connected"], true);
    assert_eq!(report["center_dimension"], 1);
    assert_eq!(report["h1"]["trivial"], true);
    let involutions = report["involutions"].as_array().unwrap();
    assert!(involutions.len() >= 2);
    assert_eq!(involutions[0]["decomposition"]["x3"], serde_json::json!(["a", "b"]));
}

#[test]
fn validate_crown_flags_h1() {
    let dir = TempDir::new().unwrap();
    let poset = write(&dir, "crown.json", CROWN);
    let (code, report, _) = run(&[p("validate"), &poset]);
    let report = report.unwrap();
    assert_eq!(code, 0);
    assert_eq!(report["h1"]["trivial"], false);
    assert!(report["h1"]["non_coboundary_cocycle"]["entries"].is_array());
    assert!(!report["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn validate_disconnected_warns() {
    let dir = TempDir::new().unwrap();
    let poset = write(&dir, "two.json", r#"{"elements": ["0","1","p","q"], "covers": [["0","1"],["p","q"]]}"#);
    let (code, report, _) = run(&[p("validate"), &poset]);
    let report = report.unwrap();
    assert_eq!(code, 0);
    assert_eq!(report["connected"], false);
    assert_eq!(report["center_dimension"], 2);
}

#[test]
fn malformed_covers_give_line_numbers() {
    let dir = TempDir::new().unwrap();
    let poset = write(&dir, "bad.json", "{\"elements\": [\"0\", \"a\"],\n \"covers\": [\n [\"0\", \"a\"],\n [\"a\", \"z\"]\n ]}");
    let (code, report, stderr) = run(&[p("validate"), &poset]);
    assert_eq!(code, 2);
    assert!(report.is_none());
    assert!(stderr.contains("line 4"), "{stderr}");
    let syntax = write(&dir, "syntax.json", "{\"elements\": [\"0\"],\n \"covers\": [}");
    let (code, _, stderr) = run(&[p("validate"), &syntax]);
    assert_eq!(code, 2);
    assert!(stderr.contains("line 2"), "{stderr}");
}

#[test]
fn unknown_flags_are_errors() {
    let dir = TempDir::new().unwrap();
    let poset = write(&dir, "diamond.json", DIAMOND);
    let (code, report, _) = run(&[p("validate"), &poset, p("--frobnicate")]);
    assert_eq!(code, 2);
    assert!(report.is_none());
    let (code, _, _) = run(&[p("validate"), &poset, p("--field"), p("gf:x")]);
    assert_eq!(code, 2);
}

#[test]
fn classify_diamond_cases() {
    let dir = TempDir::new().unwrap();
    let r13 = epsilon_file(&dir, "1", "3");
    let r515 = epsilon_file(&dir, "5", "15");
    let r31 = epsilon_file(&dir, "3", "1");
    let r11 = epsilon_file(&dir, "1", "1");

    let (code, report, _) = run(&[p("classify"), &r13, &r515, p("--inner-only")]);
    let report = report.unwrap();
    assert_eq!(code, 0);
    assert_eq!(report["verdict"], "equivalent");
    assert_eq!(report["checked"], true);

    let (code, report, _) = run(&[p("classify"), &r13, &r31, p("--inner-only")]);
    assert_eq!(code, 0);
    assert_eq!(report.unwrap()["verdict"], "equivalent");

    let out = dir.path().join("report.json");
    let (code, report, _) = run(&[p("classify"), &r11, &r13, p("--json"), &out]);
    let report = report.unwrap();
    assert_eq!(code, 1);
    assert_eq!(report["verdict"], "not_equivalent");
    assert_eq!(report["obstruction"]["kind"], "coset_mismatch");
    assert_eq!(report["obstruction"]["at"], "b");
    assert_eq!(report["obstruction"]["ratio"], "3");
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written, report);
}

#[test]
fn classify_output_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let r13 = epsilon_file(&dir, "1", "3");
    let r31 = epsilon_file(&dir, "3", "1");
    let bin = env!("CARGO_BIN_EXE_fi-involutions");
    let once = Command::new(bin).arg("classify").arg(&r13).arg(&r31).output().unwrap().stdout;
    let twice = Command::new(bin).arg("classify").arg(&r13).arg(&r31).output().unwrap().stdout;
    assert_eq!(once, twice);
}

#[test]
fn decompose_canonical_and_epsilon_forms() {
    let dir = TempDir::new().unwrap();
    let star = epsilon_file(&dir, "1", "1");
    let (code, report, _) = run(&[p("decompose"), &star]);
    let report = report.unwrap();
    assert_eq!(code, 0);
    assert_eq!(report["status"], "ok");
    let values = |key: &str| -> Vec<String> {
        report[key]["entries"].as_array().unwrap().iter().map(|e| e["value"].as_str().unwrap().to_string()).collect()
    };
    // f = δ and σ ≡ 1.
    assert_eq!(values("f"), vec!["1"; 4]);
    assert_eq!(values("sigma"), vec!["1"; 9]);

    let r13 = epsilon_file(&dir, "1", "3");
    let (code, report, _) = run(&[p("decompose"), &r13]);
    let report = report.unwrap();
    assert_eq!(code, 0);
    let sigma = report["sigma"]["entries"].as_array().unwrap();
    let at = |from: &str, to: &str| {
        sigma.iter().find(|e| e["from"] == from && e["to"] == to).map(|e| e["value"].as_str().unwrap().to_string())
    };
    assert_eq!(at("0", "b").as_deref(), Some("1/3"));
    assert_eq!(at("b", "1").as_deref(), Some("3"));
}

#[test]
fn decompose_rejects_non_involution() {
    let dir = TempDir::new().unwrap();
    let text = format!(
        r#"{{"poset": {CHAIN2}, "i_image": "-1i", "basis_images": [
          {{"from":"0","to":"0","image":{{"entries":[{{"from":"0","to":"0","value":"1"}}]}}}},
          {{"from":"0","to":"1","image":{{"entries":[{{"from":"0","to":"1","value":"1"}}]}}}},
          {{"from":"1","to":"1","image":{{"entries":[{{"from":"1","to":"1","value":"1"}}]}}}}]}}"#
    );
    let bad = write(&dir, "bad.json", &text);
    let (code, report, _) = run(&[p("decompose"), &bad]);
    let report = report.unwrap();
    assert_eq!(code, 1);
    assert_eq!(report["status"], "failure");
    assert!(report["error"].as_str().unwrap().contains("≠"));
}

fn oracle(poset: &str, name: &str) -> (i32, Value) {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, name, poset);
    let (code, report, stderr) = run(&[p("oracle"), &path, p("--field"), p("gf:3")]);
    (code, report.unwrap_or_else(|| panic!("{stderr}")))
}

fn statuses(report: &Value, status: &str) -> Vec<String> {
    report["records"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["status"] == status)
        .map(|r| r["check"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn oracle_chain2_passes() {
    let (code, report) = oracle(CHAIN2, "chain.json");
    assert_eq!(code, 0);
    assert_eq!(report["failed"], 0);
    assert!(statuses(&report, "pass").contains(&"classifier_agreement".to_string()));
}

#[test]
fn oracle_diamond_passes() {
    let (code, report) = oracle(DIAMOND, "diamond.json");
    assert_eq!(code, 0);
    assert_eq!(report["failed"], 0);
    assert!(statuses(&report, "pass").contains(&"fixed_set_class_count".to_string()));
}

#[test]
fn oracle_crown_skips_on_hypothesis() {
    let (code, report) = oracle(CROWN, "crown.json");
    assert_eq!(code, 0);
    assert_eq!(report["failed"], 0);
    let skipped = statuses(&report, "skipped");
    assert!(skipped.contains(&"h1_hypothesis".to_string()));
    assert!(skipped.contains(&"classifier_agreement".to_string()));
    let detail = report["records"][0]["detail"].as_str().unwrap();
    assert!(detail.starts_with("H1Obstruction"));
}

#[test]
fn oracle_budget_and_field_errors() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "diamond.json", DIAMOND);
    let (code, _, _) = run(&[p("oracle"), &path, p("--budget"), p("10")]);
    assert_eq!(code, 3);
    let (code, _, _) = run(&[p("oracle"), &path, p("--field"), p("qi")]);
    assert_eq!(code, 2);
}
