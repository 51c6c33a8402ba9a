//! End-to-end checks of the binary: stable JSON, exit codes, and the
//! round trip from emitted witnesses back into the verify path.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_defdatum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "exit {:?}, stderr: {}",
        output.status.code(),
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is a JSON document")
}

#[test]
fn realizable_example() {
    let value = stdout_json(&run(&["realizable", "--lift", "2,4,-3,-2,-1"]));
    assert_eq!(value["realizable"], true);
    assert_eq!(value["n"], 6);
    assert_eq!(value["k"], 1);
}

#[test]
fn lifting_decision_example() {
    let value = stdout_json(&run(&[
        "lift", "decide", "--p", "7", "--m", "3", "--h", "4",
    ]));
    assert_eq!(value["lifts"], false);
    assert_eq!(value["reason"], "condition_ii_failed");
}

#[test]
fn verify_example() {
    let value = stdout_json(&run(&[
        "defdatum",
        "verify",
        "--p",
        "5",
        "--m",
        "1",
        "--num",
        "3",
        "--den",
        "0,4,0,0,1",
    ]));
    assert_eq!(value["good"], true);
    assert_eq!(value["conductor"], 3);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "defdatum", "search", "--p", "7", "--m", "2", "--type", "1,1,3", "--ext", "2",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn search_witnesses_round_trip_through_verify() {
    let value = stdout_json(&run(&[
        "defdatum",
        "search",
        "--p",
        "7",
        "--m",
        "2",
        "--type",
        "1,1,3",
        "--ext",
        "2",
        "--emit-witness",
    ]));
    assert_eq!(value["orbit_count"], 1);
    let witnesses = value["witnesses"].as_array().unwrap();
    assert!(!witnesses.is_empty());
    for witness in witnesses {
        let encode = |coeffs: &serde_json::Value| -> String {
            coeffs
                .as_array()
                .unwrap()
                .iter()
                .map(|c| match c {
                    serde_json::Value::Number(n) => n.to_string(),
                    serde_json::Value::Array(inner) => {
                        let parts: Vec<String> = inner.iter().map(|x| x.to_string()).collect();
                        format!("[{}]", parts.join(","))
                    }
                    other => panic!("unexpected coefficient {other:?}"),
                })
                .collect::<Vec<_>>()
                .join(",")
        };
        let num = encode(&witness["num"]);
        let den = encode(&witness["den"]);
        let verified = stdout_json(&run(&[
            "defdatum", "verify", "--p", "7", "--m", "2", "--ext", "2", "--num", &num, "--den",
            &den,
        ]));
        assert_eq!(verified["good"], true);
        assert_eq!(verified["conductor"], 5);
    }
}

#[test]
fn tree_emits_json_then_dot() {
    let output = run(&["tree", "--lift", "3,-1,-1,-1", "--dot"]);
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    let (json_line, rest) = text.split_once('\n').unwrap();
    let value: serde_json::Value = serde_json::from_str(json_line).unwrap();
    assert_eq!(value["genus"], 0);
    assert!(rest.starts_with("graph tree {"));
}

#[test]
fn domain_errors_exit_one_with_reason() {
    let output = run(&["tree", "--lift", "1,1,-1,-1"]);
    assert_eq!(output.status.code(), Some(1));
    let value: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert!(value["error"].as_str().unwrap().contains("not realizable"));
}

#[test]
fn usage_errors_exit_two() {
    let output = run(&["realizable"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn screening_and_canonicalization() {
    let value = stdout_json(&run(&[
        "defdatum", "screen", "--p", "7", "--m", "3", "--h", "2",
    ]));
    assert_eq!(value["screening"]["verdict"], "primitive_ok");
    let value = stdout_json(&run(&[
        "type",
        "canon",
        "--p",
        "5",
        "--m",
        "2",
        "--entries",
        "4,1",
    ]));
    assert_eq!(value["entries"], serde_json::json!([1, 1]));
    let value = stdout_json(&run(&[
        "type", "equiv", "--p", "5", "--m", "4", "--a", "2", "--b", "3",
    ]));
    assert_eq!(value["equivalent"], true);
}

#[test]
fn construct_reports_goodness() {
    let value = stdout_json(&run(&[
        "defdatum",
        "construct",
        "--p",
        "5",
        "--m",
        "2",
        "--h",
        "4",
    ]));
    assert_eq!(value["construction"], "nonprimitive");
    assert_eq!(value["goodness"]["is_good"], true);
    assert_eq!(value["goodness"]["conductor_h"], 4);

    let value = stdout_json(&run(&[
        "defdatum",
        "construct",
        "--p",
        "7",
        "--m",
        "3",
        "--h",
        "2",
    ]));
    assert_eq!(value["construction"], "primitive");
    assert_eq!(value["goodness"]["conductor_h"], 2);
    assert_eq!(value["goodness"]["primitive"], true);
}

#[test]
fn dessin_search_and_count() {
    let value = stdout_json(&run(&[
        "dessin", "count", "--n", "5", "--c1", "5", "--c2", "3", "--c3", "2,2",
    ]));
    assert_eq!(value["classes"], 1);
    let value = stdout_json(&run(&[
        "dessin", "search", "--n", "3", "--c1", "3", "--c2", "3", "--c3", "2", "--limit", "5",
    ]));
    assert_eq!(value["count"], 0);
}

#[test]
fn m2_verify_solution() {
    // One of the two F_49 solutions of type (1,1,3).
    let value = stdout_json(&run(&[
        "m2",
        "verify",
        "--p",
        "7",
        "--ext",
        "2",
        "--lift",
        "1,1,3",
        "--poles",
        "1,[2,2],[6,4]",
    ]));
    assert_eq!(value["report"]["pass"], true);
}
