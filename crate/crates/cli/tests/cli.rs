use std::process::{Command, Output};

use serde_json::Value;

fn endop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_endop")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn schema() -> jsonschema::Validator {
    let text = include_str!("../schema/output.schema.json");
    jsonschema::validator_for(&serde_json::from_str(text).unwrap()).unwrap()
}

fn assert_valid(doc: &Value) {
    let v = schema();
    let errors: Vec<String> = v.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

#[test]
fn central_set_two_gives_both_projections() {
    let out = endop(&["central-set", "--n", "2"]);
    assert!(out.status.success());
    let doc = json_of(&out);
    assert_valid(&doc);
    assert_eq!(doc["command"], "central-set");
    assert_eq!(doc["result"]["labels"], serde_json::json!(["π1", "π2"]));
    assert_eq!(doc["result"]["survivors"], serde_json::json!([[0, 0, 1, 1], [0, 1, 0, 1]]));
    assert_eq!(doc["elapsed_ms"], Value::Null);
}

#[test]
fn classify_over_f4() {
    let out = endop(&["qpoly", "classify", "--q", "4", "--arity", "1", "--maxdeg", "4"]);
    assert!(out.status.success());
    let doc = json_of(&out);
    assert_valid(&doc);
    assert_eq!(doc["result"]["multilinear"], serde_json::json!(["X1", "X1^4"]));
}

#[test]
fn bound_violation_exits_one_with_error_name() {
    let out = endop(&["central-set", "--n", "9"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("BoundExceeded"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(endop(&["central-set"]).status.code(), Some(2));
    assert_eq!(endop(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(endop(&["group-maps", "--group", "nonsense", "--n", "1"]).status.code(), Some(2));
}

#[test]
fn identical_arguments_give_identical_bytes() {
    let args = ["schur-weyl", "--d", "2", "--n", "2", "--seed", "5"];
    let a = endop(&args);
    let b = endop(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_of(&a)["params"]["seed"], 5);
}

#[test]
fn timing_is_opt_in() {
    let doc = json_of(&endop(&["central-mod", "--ring", "zmod:4", "--n", "1", "--timing"]));
    assert_valid(&doc);
    assert!(doc["elapsed_ms"].is_u64());
    assert!(doc["result"]["elapsed_ms"].is_u64());
    assert_eq!(doc["result"]["count"], "4");
}

#[test]
fn full_suite_passes_and_matches_schema() {
    let out = endop(&["all", "--json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let doc = json_of(&out);
    assert_valid(&doc);
    assert_eq!(doc["result"]["pass"], true);
    assert_eq!(doc["result"]["criteria"].as_array().unwrap().len(), 9);
}

#[test]
fn injected_fault_fails_with_counterexample() {
    let out = endop(&["all", "--inject-fault", "perm"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("FAIL 2"), "{text}");
    assert!(text.contains("counterexample: sequential associativity"), "{text}");

    let out = endop(&["all", "--json", "--inject-fault", "word", "--criterion", "6"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json_of(&out);
    assert_valid(&doc);
    assert!(!doc["result"]["criteria"][0]["failures"].as_array().unwrap().is_empty());
}

#[test]
fn output_flag_writes_a_file() {
    let path = std::env::temp_dir().join(format!("endop-cli-test-{}.json", std::process::id()));
    let out = endop(&["word", "reduce", "--letters", "x1 x2 x2^-1 x1", "--arity", "2", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(doc["result"]["word"], "x1 x1");
}

#[test]
fn every_subcommand_produces_a_valid_document() {
    let cases: &[&[&str]] = &[
        &["central-mod", "--field", "3", "--n", "2"],
        &["graded", "--n", "1"],
        &["monoid", "--preset", "s3"],
        &["monoid", "--table", "[[0,1],[1,1]]"],
        &["group-maps", "--group", "cyclic:2", "--n", "1"],
        &["word", "compose", "--w1", "x1 x2", "--arity1", "2", "--i", "1", "--w2", "x1^-1", "--arity2", "1"],
        &["word", "eval", "--word", "x1 x2 x1^-1", "--arity", "2", "--args", "1,3"],
        &["word", "enumerate", "--arity", "1", "--max-length", "2"],
        &["perm", "compose", "--m", "2", "--i", "1", "--k", "1", "--n", "2", "--j", "2"],
        &["perm", "check"],
        &["qpoly", "compose", "--field", "2", "--f", "X1^2", "--arity-f", "1", "--i", "1", "--g", "X1*X2", "--arity-g", "2"],
        &["qpoly", "check", "--field", "2", "--poly", "X1^3", "--nvars", "1"],
        &["qpoly", "generate", "--field", "3", "--n", "2", "--exp-bound", "3", "--relations-up-to", "2"],
        &["schur-weyl", "--field", "2", "--d", "2", "--n", "2", "--full-group"],
        &["axioms", "--operad", "word", "--arity-bound", "2", "--size-bound", "2"],
        &["axioms", "--operad", "qpoly", "--field", "2^2", "--arity-bound", "2", "--size-bound", "1"],
        &["axioms", "--operad", "end", "--carrier", "2", "--arity-bound", "2", "--size-bound", "4"],
    ];
    for args in cases {
        let out = endop(args);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert_valid(&json_of(&out));
    }
    let doc = json_of(&endop(&["word", "enumerate", "--arity", "1", "--max-length", "2"]));
    assert_eq!(doc["result"]["count"], 5);
    let doc = json_of(&endop(&["schur-weyl", "--field", "2", "--d", "2", "--n", "2", "--full-group"]));
    assert_eq!(doc["result"]["dimension"], 3);
    let doc = json_of(&endop(&["qpoly", "check", "--field", "2", "--poly", "X1^3", "--nvars", "1"]));
    assert_eq!(doc["result"]["verdict"]["verdict"], "fails");
}

#[test]
fn help_names_the_computed_result() {
    let expect = [
        ("central-set", "projections"),
        ("central-mod", "scalars"),
        ("graded", "each degree"),
        ("monoid", "isomorphic to M"),
        ("group-maps", "words"),
        ("word", "free group"),
        ("perm", "projections"),
        ("qpoly", "multilinear natural operations"),
        ("schur-weyl", "permutation operators"),
        ("axioms", "associativity"),
        ("all", "acceptance checks"),
    ];
    for (cmd, phrase) in expect {
        let out = endop(&[cmd, "--help"]);
        assert!(out.status.success());
        let text = String::from_utf8_lossy(&out.stdout);
        assert!(text.contains(phrase), "{cmd}: {text}");
    }
}
