//! End-to-end runs of the `illum` binary.

use std::path::Path;
use std::process::{Command, Output};

use illumination::body::BodyFile;
use illumination::exact::Vector;
use illumination::illum::{Certificate, CertificateRecord};
use illumination::scenarios::{random_symmetric, NamedBody, Profile};
use serde_json::Value;

fn illum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_illum")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write_body(dir: &Path, name: &str, spec: &str) -> String {
    let body = NamedBody::parse(spec).unwrap().body;
    let path = dir.join(name);
    std::fs::write(&path, BodyFile::from_body(&body).to_json()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn body_files_round_trip_exactly() {
    for seed in 0..12 {
        let body = random_symmetric(3 + (seed % 3) as usize, seed, Profile::for_seed(seed)).unwrap().body;
        let file = BodyFile::from_body(&body);
        let parsed = BodyFile::parse(&file.to_json()).unwrap();
        assert_eq!(parsed, file);
        let rebuilt = parsed.build(None).unwrap();
        assert_eq!(rebuilt.generators(), body.generators());
        assert_eq!(rebuilt.representatives(), body.representatives());
        assert_eq!(BodyFile::from_body(&rebuilt), file);
    }
}

#[test]
fn vertex_of_b1_is_illuminated_by_the_opposite_axis() {
    let dir = tempfile::tempdir().unwrap();
    let b1 = write_body(dir.path(), "b1_3.json", "B1:3");
    let out = illum(&["check-illuminate", "--body", &b1, "--x", "1,0,0", "--d", "-1,0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["illuminates"], true);
    assert!(report["certificate"]["witness"].is_object());
}

#[test]
fn cube_corner_along_an_axis_is_refuted_with_a_checkable_normal() {
    let dir = tempfile::tempdir().unwrap();
    let cube = write_body(dir.path(), "cube3.json", "cube:3");
    let out = illum(&["check-illuminate", "--body", &cube, "--x", "1,1,1", "--d", "1,0,0"]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(report["illuminates"], false);
    let record: CertificateRecord = serde_json::from_value(report["certificate"].clone()).unwrap();
    let cert = record.to_certificate().unwrap();
    assert!(matches!(cert, Certificate::Refutation { .. }));
    let body = NamedBody::parse("cube:3").unwrap().body;
    let x = Vector::from_ints(&[1, 1, 1]);
    let d = Vector::from_ints(&[1, 0, 0]);
    assert!(cert.validate(&body, &x, &d).unwrap());
}

#[test]
fn malformed_body_file_is_a_usage_error_with_a_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\n  \"dim\": 3,\n  \"generators\": [[\"1\", \"0.5\"]\n").unwrap();
    let out = illum(&["body-show", "--body", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 4"), "{err}");

    std::fs::write(&path, r#"{"dim": 2, "symmetry": "one_symmetric", "generators": [["1", "0.5"]]}"#).unwrap();
    let out = illum(&["body-show", "--body", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn orbit_cap_is_a_resource_limit() {
    let out = illum(&["cover-min", "--body", "B1:3", "--orbit-cap", "5"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--orbit-cap"));
}

#[test]
fn unknown_flags_and_claims_are_usage_errors() {
    assert_eq!(illum(&["body-show", "--bogus"]).status.code(), Some(2));
    assert_eq!(illum(&["verify-paper", "--claim", "nope"]).status.code(), Some(2));
}

#[test]
fn b1_lower_bound_report_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let run = |path: &Path, jobs: &str| {
        let out = illum(&[
            "--jobs",
            jobs,
            "verify-paper",
            "--claim",
            "b1.3.lower_bound",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    };
    run(&a, "1");
    run(&b, "4");
    let first = std::fs::read(&a).unwrap();
    assert_eq!(first, std::fs::read(&b).unwrap());
    let report: Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(report["result"]["verdict"], "confirmed");
    assert_eq!(report["result"]["details"]["minimum"], 10);
    assert_eq!(report["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(report["parameters"]["claim"], "b1.3.lower_bound");
}

#[test]
fn skipped_claims_do_not_exit_zero() {
    let out = illum(&["verify-paper", "--claim", "thmE", "--body", "cube:3", "--no-certificates"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["result"]["verdict"], "skipped");
}

#[test]
fn emitted_sets_match_the_library_and_cover_when_asked() {
    let out = illum(&["sets-emit", "--family", "Method2", "--n", "4", "--delta", "1/5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["set"]["size"], 16);

    let out = illum(&["sets-emit", "--family", "T2", "--body", "B1:3"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["cover"]["verdict"], "fails");

    let out = illum(&["sets-emit", "--family", "G", "--n", "3", "--delta", "0.25"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn minimum_cover_of_b1() {
    let out = illum(&["cover-min", "--body", "B1:3"]);
    assert_eq!(out.status.code(), Some(0));
    let directions = json(&out)["min_cover"]["subset"]["directions"].as_array().unwrap().len();
    assert_eq!(directions, 10);
}

#[test]
fn selftest_filter_runs_one_group() {
    let out = illum(&["selftest", "--filter", "sets"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).collect();
    assert_eq!(lines.len(), 4, "{text}");
    for id in ["prop3.5", "lemma5.2", "lemma4.3", "xray"] {
        assert!(lines.iter().any(|l| l.contains(id)), "{id} missing from {text}");
    }
}

#[test]
fn wrong_delta_breaks_the_perturbed_basis_property() {
    let ok = illum(&["selftest", "--filter", "illum"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = illum(&["selftest", "--filter", "illum", "--wrong-delta"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stdout).contains("FAIL"));
}

#[test]
fn pool_that_cannot_cover_has_no_minimum() {
    let out = illum(&["cover-min", "--body", "B1:3", "--family", "T2", "--n", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(report["cover"]["verdict"], "fails");
    assert!(report.get("min_cover").is_none());
}
