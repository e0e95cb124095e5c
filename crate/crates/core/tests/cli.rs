use std::process::{Command, Output};

use a5k3::driver::{parse_structured, run_suite, Selector, Status};

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verify"))
        .args(args)
        .output()
        .expect("run verify")
}

#[test]
fn structured_report_round_trips() {
    let out = verify(&["prop1_4", "--format", "structured"]);
    assert_eq!(out.status.code(), Some(0));
    let report = parse_structured(&out.stdout).unwrap();
    assert_eq!(report, run_suite(Selector::FixedPoints));
    let mixed: Vec<_> = report.checks.iter().filter(|c| c.id.starts_with("prop1_4.mixed")).collect();
    assert_eq!(mixed.len(), 3);
    assert!(mixed.iter().all(|c| c.status == Status::Pass));
}

#[test]
fn output_is_deterministic() {
    for format in ["text", "structured"] {
        let a = verify(&["section3", "--format", format]);
        let b = verify(&["section3", "--format", format]);
        assert_eq!(a.stdout, b.stdout);
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn writes_to_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = verify(&["lemma1_8", "--format", "structured", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let report = parse_structured(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(report.summary.flagged, 1);
    assert_eq!(report.summary.fail, 0);
    let rec = report.get("lemma1_8.orbit_sizes").unwrap();
    assert_eq!(rec.status, Status::Flagged);
    assert!(rec.note.is_some());
}

#[test]
fn full_run_succeeds_with_one_flag() {
    let out = verify(&["all"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("flagged lemma1_8.orbit_sizes"));
    assert!(text.trim_end().ends_with("0 fail, 1 flagged"));
}

#[test]
fn usage_errors_exit_with_2() {
    assert_eq!(verify(&["foo"]).status.code(), Some(2));
    assert_eq!(verify(&["all", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(verify(&[]).status.code(), Some(2));
}

#[test]
fn structured_schema_fields() {
    let out = verify(&["obstruction", "--format", "structured"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["version", "checks", "summary"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let first = &v["checks"][0];
    for key in ["id", "paper_location", "computed", "expected", "status"] {
        assert!(first.get(key).is_some(), "{key}");
    }
    assert!(first.get("note").is_none());
    assert_eq!(v["summary"]["fail"], 0);
}
