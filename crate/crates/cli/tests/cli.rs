use std::process::{Command, Output};

use contikit::cfrac::PellDocument;
use contikit::PeriodicSystem;

fn contikit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_contikit")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn expand_prints_the_period() {
    let out = contikit(&["expand", "--n", "8"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "sqrt(8) = [2; (1,4)] period d=2");
}

#[test]
fn pell_fundamental_solution() {
    let out = contikit(&["pell", "--n", "13", "--count", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "x=649 y=180");
}

#[test]
fn pseudoprime_json_line() {
    let out = contikit(&["pseudoprime", "--sqrt", "8", "--candidate", "35", "--json"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), r#"{"n":"35","epsilon":-1,"index":"71","verdict":"probable_prime"}"#);
}

#[test]
fn range_scan_is_the_same_with_more_jobs() {
    let one = contikit(&["pseudoprime", "--sqrt", "8", "--from", "3", "--to", "999", "--json"]);
    let four = contikit(&["pseudoprime", "--sqrt", "8", "--from", "3", "--to", "999", "--json", "--jobs", "4"]);
    assert!(one.status.success() && four.status.success());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(stdout(&one).lines().count(), 499);
}

#[test]
fn json_documents_round_trip() {
    let out = contikit(&["pell", "--n", "61", "--count", "2", "--json"]);
    let text = stdout(&out);
    let doc: PellDocument = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(doc.solutions[0].x.to_string(), "1766319049");
    assert_eq!(serde_json::to_string(&doc).unwrap(), text.trim());

    for args in [
        &["reduce", "--sqrt", "8", "--json"][..],
        &["pisano", "--sqrt", "8", "--p", "3", "--json"],
        &["check", "congruence", "--sqrt", "8", "--p", "7", "--json"],
        &["series", "--sqrt", "8", "--family", "pell_x", "--json"],
    ] {
        let text = stdout(&contikit(args));
        let value: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
        let again: serde_json::Value = serde_json::from_str(&serde_json::to_string(&value).unwrap()).unwrap();
        assert_eq!(again, value, "{args:?}");
    }
}

#[test]
fn system_file_input() {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("s8.json");
    let sys = PeriodicSystem::from_ints(&[1, 1], &[1, 4], 2, true).unwrap();
    std::fs::write(&path, serde_json::to_string(&sys).unwrap()).unwrap();
    let out = contikit(&["binet", "--system", path.to_str().unwrap(), "--n", "5", "--r", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "B_11 = 6930 (recurrence: 6930)");
}

#[test]
fn inline_system_flags() {
    let out = contikit(&["reduce", "--a", "2,3", "--b", "1,1", "--json"]);
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(value["reduced"]["c"], "6");
    assert_eq!(value["reduced"]["d"], "-6");
    assert_eq!(value["verified"], true);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| contikit(args).status.code();
    assert_eq!(code(&["series", "--sqrt", "8", "--family", "millin"]), Some(0));
    // Forty terms cannot reach a 45-digit tolerance.
    assert_eq!(code(&["series", "--sqrt", "8", "--family", "pi_over_6", "--terms", "40"]), Some(1));
    assert_eq!(code(&["expand", "--n", "9"]), Some(2));
    assert_eq!(code(&["pisano", "--sqrt", "8", "--p", "9"]), Some(2));
    assert_eq!(code(&["reduce", "--a", "1,0", "--b", "1,1"]), Some(2));
    assert_eq!(code(&["expand", "--n", "8", "--colour"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
}

#[test]
fn diagnostics_are_one_line() {
    let out = contikit(&["expand", "--n", "16"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
}

#[test]
fn paper_report_is_deterministic() {
    let run = || contikit(&["paper", "--systems", "4", "--json"]);
    let (a, b) = (run(), run());
    assert_eq!(a.stdout, b.stdout);
    let value: serde_json::Value = serde_json::from_str(stdout(&a).trim()).unwrap();
    assert_eq!(value["criteria"].as_array().unwrap().len(), 13);
    assert!(value["seed"].is_u64());
}
