use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_clusterkit"));
    cmd.args(args).env_remove("CLUSTERKIT_SEED");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn shift_is_a_variable() {
    let o = run(&["ccvar", "shift(3)", "--quiver", "D4tilde"], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "x3");
}

#[test]
fn simple_projective_of_kronecker() {
    let o = run(&["ccvar", "P(2)", "--quiver", "kronecker", "--format", "json"], &[]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "(x1^2 + 1)/x2");
    assert_eq!(v["dim"], json!([0, 1]));
}

#[test]
fn square_of_generic_variable() {
    let o = run(&["expand", "delta[1] * delta[1]", "--quiver", "kronecker", "--format", "json"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, json!([{"dim": [2, 2], "coef": 1}, {"dim": [0, 0], "coef": 1}]));
}

#[test]
fn oracle_counts_generic_module() {
    let o = run(&["oracle", "2,1,1,1,1", "1,0,0,0,0", "--quiver", "D4tilde", "--format", "json"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    // Gr_{e_1} of the generic δ-module is a projective line.
    assert_eq!(v["chi"], "2");
    assert_eq!(v["polynomial"], json!(["1", "1"]));
}

#[test]
fn quiver_from_inline_json() {
    let spec = r#"{"vertices": 2, "arrows": [[1,2],[1,2]]}"#;
    let o = run(&["quiver", "show", "--quiver", spec, "--format", "json"], &[]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["delta"], json!([1, 1]));
    let o = run(&["quiver", "show", "--quiver", r#"{"vertices": 3, "arrows": [[1,2],[2,3],[3,1]]}"#], &[]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn d4_suite_passes() {
    let o = run(&["verify", "d4", "--quiver", "D4tilde"], &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("generic_value_oracle"));
}

#[test]
fn verify_all_on_alternating_builtins() {
    for q in ["kronecker", "A22tilde", "D4tilde"] {
        let o = run(&["verify", "all", "--quiver", q], &[]);
        assert_eq!(o.status.code(), Some(0), "{q}: {}", stdout(&o));
    }
}

#[test]
fn non_alternating_basis_suite_reports_failures() {
    let o = run(&["verify", "basis", "--quiver", "A32tilde", "--format", "json"], &[]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], false);
    let reports = v["suites"][0]["reports"].as_array().unwrap();
    assert!(reports.iter().filter(|r| r["pass"] == false).all(|r| r["params"]["clash"] == true));
}

#[test]
fn usage_errors_are_json() {
    for args in [&["ccvar", "P(9)", "--quiver", "kronecker"][..], &["verify", "nope"], &["verify", "d4"], &["frobnicate"]] {
        let o = run(args, &[]);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
        assert_eq!(v["error"]["kind"], "usage");
    }
}

#[test]
fn output_is_deterministic_and_seeded() {
    let args = ["verify", "basis", "--quiver", "A22tilde", "--format", "json"];
    let a = run(&args, &[]);
    let b = run(&args, &[]);
    assert_eq!(a.stdout, b.stdout);
    let seeded = run(&args, &[("CLUSTERKIT_SEED", "1")]);
    assert_eq!(a.stdout, seeded.stdout);
    let other = run(&args, &[("CLUSTERKIT_SEED", "99")]);
    assert_ne!(a.stdout, other.stdout);
    let flag = run(&["verify", "basis", "--quiver", "A22tilde", "--format", "json", "--seed", "99"], &[]);
    assert_eq!(other.stdout, flag.stdout);
}
