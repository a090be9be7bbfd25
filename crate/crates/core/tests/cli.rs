//! End-to-end runs of the command-line binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_howe-kostant")).args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_howe-kostant"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_duality_exits_zero() {
    let o = run(&["verify", "--suite", "duality", "--type", "c", "--d", "2", "--degree", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("ok duality"));
}

#[test]
fn homology_json_lists_the_contributor() {
    let o = run(&[
        "homology", "--side", "super", "--type", "c", "--m", "1", "--n", "1", "--d", "2", "--lambda", "-", "--k", "1",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let contributors = v["contributors"].as_array().unwrap();
    assert_eq!(contributors.len(), 1);
    assert_eq!(contributors[0]["lambda_w"], "4");
    assert_eq!(v["k"], 1);
}

#[test]
fn weyl_lists_identity_and_s0() {
    let o = run(&["weyl", "--type", "a", "--kmax", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let elems = v["elements"].as_array().unwrap();
    assert_eq!(elems.len(), 2);
    assert_eq!(elems[0]["reduced_word"], serde_json::json!([]));
    assert_eq!(elems[1]["reduced_word"], serde_json::json!([0]));
    assert_eq!(elems[1]["lambda_w"]["plus"], "2");
}

#[test]
fn casimir_reports_lemma_verdicts() {
    let o = run(&[
        "casimir", "--side", "super", "--type", "a", "--p", "1", "--q", "1", "--m", "1", "--n", "1", "--d", "2",
        "--lambda", "1,-1", "--json", "--seed", "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ok"], true);
    assert_eq!(v["lemma_samples"]["passed"], 100);
}

#[test]
fn output_is_deterministic() {
    let args = ["casimir", "--side", "negative", "--type", "d", "--d", "2", "--lambda", "1", "--json", "--seed", "9"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["verify", "--suite", "duality", "--type", "q", "--d", "2"]).status.code(), Some(2));
    assert_eq!(run(&["char", "--type", "c", "--d", "3"]).status.code(), Some(2));
    assert_eq!(run(&["char", "--side", "negative", "--type", "a", "--d", "1"]).status.code(), Some(2));
    assert_eq!(run(&["homology", "--type", "c", "--d", "2", "--lambda", "2,1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn thread_variable_is_validated() {
    let o = Command::new(env!("CARGO_BIN_EXE_howe-kostant"))
        .args(["weyl", "--type", "c", "--kmax", "0"])
        .env("HOWE_KOSTANT_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_howe-kostant"))
        .args(["weyl", "--type", "c", "--kmax", "0"])
        .env("HOWE_KOSTANT_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn empty_batch_is_ok() {
    let o = run_stdin(&["batch", "-"], "");
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["summary"]["jobs"], 0);
}

#[test]
fn batch_runs_three_jobs() {
    let input = concat!(
        r#"{"command":"verify","suite":"duality","type":"c","d":2,"degree":4}"#,
        "\n",
        r#"{"command":"verify","suite":"euler-poincare","side":"negative","type":"d","d":2,"degree":4}"#,
        "\n",
        r#"{"command":"verify","suite":"omega","side":"super","type":"c","m":1,"n":1,"d":2,"lambda":"-","k":2}"#,
        "\n",
    );
    let o = run_stdin(&["batch", "-"], input);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 4);
    for (i, v) in lines[..3].iter().enumerate() {
        assert_eq!(v["line"], i + 1);
        assert_eq!(v["ok"], true);
    }
    assert_eq!(lines[3]["summary"]["ok"], 3);
}

#[test]
fn malformed_batch_line_is_recorded() {
    let input = "{\"command\":\"weyl\",\"type\":\"d\",\"kmax\":1}\n{oops\n";
    let o = run_stdin(&["batch", "-"], input);
    assert_eq!(o.status.code(), Some(1));
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines[0]["ok"], true);
    assert_eq!(lines[1]["ok"], false);
    assert_eq!(lines[1]["exit"], 2);
    assert_eq!(lines[2]["summary"]["failed"], 1);
}
