mod common;

use std::process::Command;

use charaudit::cli::{reproduce, run, COUNTEREXAMPLE_FIXTURE, EXIT_ASSERTION, EXIT_CAP, EXIT_INPUT, EXIT_OK};
use charaudit::PermGroup;
use common::fixture_path;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("charaudit").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn table_of_s3() {
    let (code, out, _) = call(&["table", &fixture_path("s3")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        out,
        "order 6\nclasses 3\nconductor 6\n\
         class 0 size 1 elemorder 1\nclass 1 size 3 elemorder 2\nclass 2 size 2 elemorder 3\n\
         chi 0 degree 1 : 1 | 1 | 1\nchi 1 degree 1 : 1 | -1 | 1\nchi 2 degree 2 : 2 | 0 | -1\n"
    );
}

#[test]
fn table_of_trivial_group() {
    let (code, out, _) = call(&["table", &fixture_path("trivial")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "order 1\nclasses 1\nconductor 1\nclass 0 size 1 elemorder 1\nchi 0 degree 1 : 1\n");
}

#[test]
fn table_written_to_file() {
    let path = std::env::temp_dir().join(format!("charaudit-a5-{}.tbl", std::process::id()));
    let (code, out, _) = call(&["table", &fixture_path("a5"), "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.starts_with("order 60\nclasses 5\nconductor 30\n"));
}

#[test]
fn input_errors_exit_two() {
    let dir = std::env::temp_dir();
    let bad = dir.join(format!("charaudit-bad-{}.grp", std::process::id()));
    std::fs::write(&bad, "degree 3\n(1 2 7)\n").unwrap();
    let (code, _, err) = call(&["table", bad.to_str().unwrap()]);
    std::fs::remove_file(&bad).unwrap();
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("out of range"), "{err}");

    let (code, _, _) = call(&["table", "/nonexistent/group.grp"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = call(&["frobnicate"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = call(&["table", &fixture_path("s3"), "--cap", "0"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, err) = call(&["table", &fixture_path("s3"), "--prime", "11"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("11"));
}

#[test]
fn cap_exceeded_exits_three() {
    let (code, _, err) = call(&["table", &fixture_path("a5"), "--cap", "59"]);
    assert_eq!(code, EXIT_CAP);
    assert!(err.contains("too large"));
    let (code, _, _) = call(&["miller", &fixture_path("perfect_69120_2"), "--cap", "1000"]);
    assert_eq!(code, EXIT_CAP);
}

#[test]
fn miller_reports() {
    let (code, out, _) = call(&["miller", &fixture_path("a5")]);
    assert_eq!(code, EXIT_OK);
    assert!(!out.contains("below_half yes"));
    assert_eq!(out.matches("\nchi ").count() + 1, 5);
    assert!(out.contains("equality yes"));

    let (code, out, _) = call(&["miller", &fixture_path("c2")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.matches("lambda_mod 1/1 (~1.0000)").count(), 2);

    let (_, out, _) = call(&["miller", &fixture_path("a5"), "--no-siegel", "--no-cassels"]);
    assert!(!out.contains("siegel") && !out.contains("cassels"));
}

#[test]
fn miller_on_the_fixture() {
    let (code, out, _) = call(&["miller", &fixture_path("perfect_69120_2"), "--no-cassels"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.matches("below_half yes").count(), 8);
    assert_eq!(out.matches("lambda_mod 511/1152 (~0.4436)").count(), 8);
}

#[test]
fn reproduce_counterexample_passes() {
    let (code, out, _) = call(&["reproduce-counterexample"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines.iter().all(|l| l.starts_with("PASS ")), "{out}");
}

#[test]
fn reproduce_with_another_prime() {
    // 1201 = 10·120 + 1 is prime
    let (code, out, _) = call(&["reproduce-counterexample", "--prime", "1201"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert_eq!(out.matches("PASS ").count(), 6);
}

#[test]
fn reproduce_detects_a_tampered_fixture() {
    let full = PermGroup::parse(COUNTEREXAMPLE_FIXTURE).unwrap();
    let tampered = PermGroup::new(full.degree(), full.generators()[..1].to_vec());
    let checks = reproduce(&tampered, None);
    assert_eq!(checks.len(), 6);
    assert!(!checks[0].passed);
    assert!(checks[0].line().starts_with("FAIL order"));
    assert!(checks.iter().any(|c| !c.passed));
}

#[test]
fn trace_sequence_output() {
    let (code, out, _) = call(&["trace-sequence", "--max-p", "7"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "5 3/2 1.5000\n7 5/3 1.6667\n");
    let (_, out, _) = call(&["trace-sequence", "--max-p", "5"]);
    assert_eq!(out, "5 3/2 1.5000\n");
    let (code, _, err) = call(&["trace-sequence", "--max-p", "4"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("at least 5"));
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        vec!["table".to_string(), fixture_path("sl23")],
        vec!["miller".to_string(), fixture_path("s4")],
        vec!["trace-sequence".to_string(), "--max-p".to_string(), "50".to_string()],
    ] {
        let a: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
        assert_eq!(call(&a), call(&a));
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_charaudit");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["table", &fixture_path("c3")]);
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("conductor 3"));
    assert_eq!(status(&["table", &fixture_path("a5"), "--cap", "10"]).status.code(), Some(EXIT_CAP));
    assert_eq!(status(&["trace-sequence", "--max-p", "3"]).status.code(), Some(EXIT_INPUT));
    assert_ne!(EXIT_ASSERTION, EXIT_OK);
}
