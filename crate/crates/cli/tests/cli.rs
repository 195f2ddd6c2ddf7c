use std::process::{Command, Output};

use gapcorner::sweep::{read_csv, read_json};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gapcorner")).args(args).output().expect("binary runs")
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gapcorner")).args(args).env(key, value).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn count_small_trapezoid() {
    let o = run(&["count", "--n", "2", "--x", "1", "--y", "0", "--kept", "1,2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "10");
}

#[test]
fn count_with_nothing_kept() {
    let o = run(&["count", "--n", "3", "--x", "0", "--y", "-1", "--kept", ""]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn count_routes_agree() {
    for route in ["product", "pfaffian", "oracle"] {
        let o = run(&["count", "--n", "3", "--x", "2", "--y", "1", "--kept", "1,3", "--route", route]);
        assert_eq!(stdout(&o).trim(), "504", "{route}");
    }
    let o = run(&["count", "--n", "3", "--x", "2", "--y", "1", "--kept", "1,3", "--check"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn check_reports_an_injected_fault() {
    for route in ["product", "pfaffian", "oracle"] {
        let o = run_env(&["count", "--n", "2", "--x", "1", "--y", "0", "--check"], "GAPCORNER_INJECT_FAULT", route);
        assert_eq!(code(&o), 1, "{route}");
        let err = stderr(&o);
        assert!(err.contains("10") && err.contains("11"), "{err}");
    }
}

#[test]
fn count_from_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.json");
    std::fs::write(&path, r#"{"n": 2, "x": 1, "y": 0, "kept_bumps": [1, 2]}"#).unwrap();
    let o = run(&["count", "--spec", path.to_str().unwrap(), "--check"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("oracle: 10"));
    std::fs::write(&path, "{not json").unwrap();
    assert_eq!(code(&run(&["count", "--spec", path.to_str().unwrap()])), 2);
}

#[test]
fn count_with_gap() {
    let o = run(&["count", "--n", "4", "--x", "4", "--y", "0", "--gap", "2,2", "--check"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    // closed forms only cover the full D_{n,n,0}
    let o = run(&["count", "--n", "4", "--x", "3", "--y", "0", "--gap", "1,1"]);
    assert_eq!(code(&o), 2);
    let o = run(&["count", "--n", "4", "--x", "3", "--y", "0", "--gap", "1,1", "--route", "oracle"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn count_input_errors() {
    assert_eq!(code(&run(&["count", "--n", "2"])), 2);
    assert_eq!(code(&run(&["count", "--n", "2", "--x", "1", "--y", "0", "--kept", "2,1"])), 2);
    assert_eq!(code(&run(&["count", "--n", "2", "--x", "1", "--y", "0", "--kept", "a"])), 2);
    assert_eq!(code(&run(&["count", "--n", "2", "--x", "1", "--y", "-2"])), 2);
    assert_eq!(code(&run(&["count", "--n", "2", "--x", "1", "--y", "0", "--gap", "1"])), 2);
    assert_eq!(code(&run(&["count", "--n", "2", "--x", "1", "--y", "0", "--route", "nope"])), 2);
}

#[test]
fn correlate_unit_gap_with_prediction() {
    let o = run(&["correlate", "--alpha", "1", "--beta", "1", "--compare-prediction"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("omega = 1/1"), "{out}");
    assert!(out.contains("prediction ~ 1.47021038779"), "{out}");
    assert!(out.contains("ratio ~ 0.680174761588"), "{out}");
}

#[test]
fn correlate_both_routes_print_the_same_rational() {
    let o = run(&["correlate", "--alpha", "2", "--beta", "2", "--route", "both"]);
    assert_eq!(code(&o), 0);
    let exact: Vec<String> =
        stdout(&o).lines().filter(|l| l.contains(" = ")).map(|l| l.split(" = ").nth(1).unwrap().to_string()).collect();
    assert_eq!(exact.len(), 2);
    assert_eq!(exact[0], exact[1]);
    assert_eq!(exact[0], "51/128");
}

#[test]
fn correlate_finite_n() {
    let o = run(&["correlate", "--alpha", "1", "--beta", "1", "--route", "finite-n", "--n", "9"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("= 1/1"));
    let o = run(&["correlate", "--alpha", "1", "--beta", "2", "--route", "finite-n", "--n", "10"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("alpha = 2v - R"));
    assert_eq!(code(&run(&["correlate", "--alpha", "1", "--beta", "1", "--route", "finite-n"])), 2);
}

#[test]
fn correlate_rejects_bad_gaps() {
    assert_eq!(code(&run(&["correlate", "--alpha", "0", "--beta", "1"])), 2);
    assert_eq!(code(&run(&["correlate", "--alpha", "-3", "--beta", "1"])), 2);
}

#[test]
fn sweep_csv_approaches_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    let o = run(&["sweep", "--q", "1", "--r", "80,20,40", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next().unwrap(), "R,q_num,q_den,omega_num,omega_den,prediction,ratio");
    let rows = read_csv(&text).unwrap();
    assert_eq!(rows.iter().map(|r| r.r).collect::<Vec<_>>(), vec![20, 40, 80]);
    for w in rows.windows(2) {
        assert!((w[1].ratio - 1.0).abs() < (w[0].ratio - 1.0).abs());
    }
}

#[test]
fn sweep_json_round_trips() {
    let o = run(&["sweep", "--q", "1/2,2", "--r", "2:8:2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let rows = read_json(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 8);
    let again = serde_json::to_string_pretty(&rows).unwrap();
    assert_eq!(read_json(&again).unwrap(), rows);
}

#[test]
fn sweep_output_does_not_depend_on_threads() {
    let args = ["sweep", "--q", "1/2,1,3/2,2", "--r", "2:40:2"];
    let one = run(&[&args[..], &["--jobs", "1"]].concat());
    let many = run(&[&args[..], &["--jobs", "6"]].concat());
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn sweep_errors() {
    assert_eq!(code(&run(&["sweep", "--q", "1", "--r", ""])), 2);
    assert_eq!(code(&run(&["sweep", "--q", "", "--r", "4"])), 2);
    assert_eq!(code(&run(&["sweep", "--q", "1", "--r", "0"])), 2);
    assert_eq!(code(&run(&["sweep", "--q", "1", "--r", "4:1:0"])), 2);
    let o = run(&["sweep", "--q", "1", "--r", "4", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("cannot write"));
}

#[test]
fn verify_every_suite() {
    for suite in ["routes", "schur", "lemma33", "ssc", "factorization", "moments", "conjecture"] {
        let o = run(&["verify", suite]);
        assert_eq!(code(&o), 0, "{suite}: {}", stdout(&o));
        let out = stdout(&o);
        assert!(out.lines().any(|l| l.starts_with("pass ")));
        assert!(!out.contains("FAIL"));
        assert!(out.trim_end().ends_with("0 failed"));
    }
}

#[test]
fn verify_unknown_suite_is_usage() {
    let o = run(&["verify", "unknown"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("usage error"));
}

#[test]
fn unknown_subcommand_is_usage() {
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&[])), 2);
}
