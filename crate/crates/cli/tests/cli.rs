//! End-to-end runs of the compiled binary: exit codes, output formats, and
//! determinism across identical invocations.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cli"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn write_ctx(name: &str, json: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    fs::write(&path, json).expect("context file written");
    path
}

fn antichain_swap_file() -> PathBuf {
    write_ctx(
        "antichain_swap.json",
        r#"{"elements": ["a", "b"], "leq": [], "E": "full", "alpha": {"a": "b", "b": "a"}}"#,
    )
}

#[test]
fn passing_suites_exit_zero() {
    let out = run(&["chain", "verify", "--size", "6", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stdout(&out).starts_with("suite sugihara-axioms: pass"));
}

#[test]
fn malformed_contexts_exit_two_and_name_the_field() {
    let path = write_ctx(
        "bad_order.json",
        r#"{"elements": ["a", "b"], "leq": [["a", "missing"]]}"#,
    );
    let out = run(&["ctx", "validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("order"), "stderr was: {err}");
    assert!(err.contains("missing"), "stderr was: {err}");

    let out = run(&["ctx", "validate", "/nonexistent/ctx.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_share_the_invalid_input_code() {
    let out = bin().arg("no-such-command").output().expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn a_failed_search_exits_one() {
    let path = write_ctx("point.json", r#"{"elements": ["x"]}"#);
    let out = run(&["embed", "find", "--chain", "9", "--ctx", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json output");
    assert_eq!(parsed["found"], serde_json::Value::Bool(false));
}

#[test]
fn the_three_element_chain_lands_on_the_known_upsets() {
    let path = antichain_swap_file();
    let out = run(&["embed", "find", "--chain", "3", "--ctx", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json output");
    let digests: Vec<&str> = parsed["map"]
        .as_array()
        .expect("map array")
        .iter()
        .map(|e| e["target_digest"].as_str().expect("digest string"))
        .collect();
    assert_eq!(digests, vec!["00", "09", "0f"]);
}

#[test]
fn identical_invocations_byte_match() {
    let args = ["rep", "odd", "verify", "--n", "1", "--trials", "60", "--seed", "13"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout(&first), stdout(&second));
    assert!(!stdout(&first).is_empty());
}

#[test]
fn membership_queries_report_the_boolean_without_failing() {
    let inside = run(&[
        "rep", "member", "--family", "OddR:-1", "--n", "1", "--pair", "(0)+ , (1/2)+",
    ]);
    assert_eq!(inside.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&inside)).expect("json");
    assert_eq!(parsed["member"], serde_json::Value::Bool(true));

    let outside = run(&[
        "rep", "member", "--family", "OddR:-1", "--n", "1", "--pair", "(1/2)+ , (0)+",
    ]);
    assert_eq!(outside.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&outside)).expect("json");
    assert_eq!(parsed["member"], serde_json::Value::Bool(false));

    let wrong_dim = run(&[
        "rep", "member", "--family", "OddR:-1", "--n", "2", "--pair", "(0)+ , (1)+",
    ]);
    assert_eq!(wrong_dim.status.code(), Some(2));
}

#[test]
fn dot_output_is_a_digraph_and_only_for_built_algebras() {
    let path = antichain_swap_file();
    let out = run(&["algebra", "build", path.to_str().unwrap(), "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("digraph"));

    let out = run(&["chain", "gen", "--size", "4", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_lands_in_the_requested_file() {
    let target = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("chain4.json");
    let out = run(&["chain", "gen", "--size", "4", "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    let written = fs::read_to_string(&target).expect("output file");
    let parsed: serde_json::Value = serde_json::from_str(&written).expect("json");
    assert_eq!(parsed["size"], serde_json::json!(4));
    assert_eq!(parsed["odd"], serde_json::Value::Bool(false));
}
