//! End-to-end tests of the command-line interface.

use std::process::Command;

fn qdouble(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_qdouble"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn list_suites_names_them_all() {
    let (stdout, _, code) = qdouble(&["list-suites"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = stdout.lines().collect();
    assert_eq!(names.len(), 16);
    assert!(names.contains(&"yang_baxter"));
    assert!(names.contains(&"transmutation"));
}

#[test]
fn eval_pairing_example() {
    // sigma(x[1,2], x[2,1]) = z (q - q^-1) = (1 - t^4) / t at N = 2
    let (stdout, _, code) = qdouble(&["eval", "sigma(x[1,2], x[2,1])", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "(-t^4 + 1) / t");
}

#[test]
fn eval_normal_form_example() {
    let (stdout, _, code) = qdouble(&["eval", "nf(x[2,2]x[1,1])", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(
        stdout.trim(),
        "x[1,1]x[2,2] + ((-t^4 + 1) / t^2) * x[1,2]x[2,1]"
    );
}

#[test]
fn eval_functional_example() {
    let (stdout, _, code) = qdouble(&["eval", "eval(E[1], x[1,2])", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "(-t^4 + 1) / t^2");
}

#[test]
fn eval_parse_error_carries_position() {
    let (_, stderr, code) = qdouble(&["eval", "nf(x[1,1] &)", "--n", "2"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("parse error at byte"), "stderr: {stderr}");
}

#[test]
fn suite_exit_code_and_json_determinism() {
    let args = [
        "suite",
        "det_grouplike_central",
        "--n",
        "2",
        "--format",
        "json",
    ];
    let (a, _, code_a) = qdouble(&args);
    let (b, _, code_b) = qdouble(&args);
    assert_eq!(code_a, 0);
    assert_eq!(code_b, 0);
    assert_eq!(a, b, "identical inputs must give byte-identical JSON");
    let v: serde_json::Value = serde_json::from_str(&a).expect("valid JSON");
    assert_eq!(v["schema"], 1);
    assert_eq!(v["suite"], "det_grouplike_central");
    assert!(v["checks"].as_array().is_some_and(|c| !c.is_empty()));
}

#[test]
fn suite_unknown_name_fails() {
    let (_, stderr, code) = qdouble(&["suite", "nonsense"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown suite"));
}

#[test]
fn suite_respects_thread_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_qdouble"))
        .args(["suite", "yang_baxter", "--n", "2"])
        .env("QDOUBLE_THREADS", "1")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn dmul_json_lists_terms() {
    let (stdout, _, code) = qdouble(&[
        "dmul",
        "Khat[1] (x) x[1,1]",
        "E[1] (x) x[1,2]",
        "--n",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid JSON");
    let terms = v["terms"].as_array().expect("terms array");
    assert!(!terms.is_empty());
    for t in terms {
        assert!(t["dual_word"].is_string());
        assert!(t["monomial"].is_string());
        assert!(t["coefficient"].is_string());
    }
}

#[test]
fn braided_both_prints_verdict() {
    let (stdout, _, code) = qdouble(&["braided", "mul", "x[1,1]", "x[1,1]", "--n", "2"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("closed:"));
    assert!(stdout.contains("general:"));
    assert!(stdout.contains("verdict: agree"));
    // semantic comparison backs the coaction verdict
    let (stdout, _, code) = qdouble(&["braided", "coaction", "x[2,2]", "--n", "2"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("verdict: agree"));
}

#[test]
fn braided_single_form() {
    let (stdout, _, code) = qdouble(&[
        "braided", "antipode", "x[1,2]", "--n", "2", "--form", "closed",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("closed:"));
    assert!(!stdout.contains("general:"));
    assert!(!stdout.contains("verdict"));
}
