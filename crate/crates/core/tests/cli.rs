use std::fs;
use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn epsilon(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_epsilon")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned(), String::from_utf8_lossy(&out.stderr).into_owned())
}

fn corpus(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(rel).display().to_string()
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("epsilon-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    fs::write(&p, contents).unwrap();
    p.display().to_string()
}

#[test]
fn translate_prints_epsilon_form() {
    let (code, out, _) = epsilon(&["translate", "--formula", "forall x. P(x)"]);
    assert_eq!(code, 0);
    assert!(out.contains('ε'), "{out}");
}

#[test]
fn intuitionistic_universal_is_refused() {
    let (code, _, err) = epsilon(&["translate", "--formula", "forall x. P(x)", "--mode", "intuitionistic"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}

#[test]
fn nested_substitution_json() {
    let (code, out, _) = epsilon(&["--json", "h-substitute", "--problem", &corpus("problems/pathology.prob"), "--cap", "16", "--oracle", "8"]);
    assert_eq!(code, 0, "{out}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["command"], "h-substitute");
    assert_eq!(v["passed"], true);
}

#[test]
fn failing_substitution_exits_one() {
    let p = scratch("loop.prob", "3 <= 5 -> 3 <= (eps x. 3 <= x)\n");
    assert_eq!(epsilon(&["h-substitute", "--problem", &p, "--cap", "16"]).0, 0);
    assert_eq!(epsilon(&["h-substitute", "--problem", &p, "--cap", "16", "--max-iter", "0"]).0, 1);
}

#[test]
fn every_derivation_in_the_corpus_checks() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus/derivations");
    for e in fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path().display().to_string();
        assert_eq!(epsilon(&["prove-check", "--derivation", &p, "--profile", "cp-eps*"]).0, 0, "{p}");
        assert_eq!(epsilon(&["eliminate-epsilon", "--derivation", &p]).0, 0, "{p}");
    }
}

#[test]
fn model_check_and_output_file() {
    let model = scratch("m.model", "universe a b c\nconst c = a\npred P 1 : b c\n");
    let target = std::env::temp_dir().join(format!("epsilon-cli-{}/report.txt", std::process::id()));
    let (code, out, _) = epsilon(&["check-model", "--model", &model, "--output", &target.display().to_string()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert!(!fs::read_to_string(target).unwrap().is_empty());
}

#[test]
fn demos_run() {
    for d in ["a1a5", "nested-substitution", "heyting-gap", "induction"] {
        assert_eq!(epsilon(&["demo", d]).0, 0, "{d}");
    }
    assert_eq!(epsilon(&["demo", "unknown"]).0, 2);
}

#[test]
fn sample_inputs() {
    let (code, out, _) = epsilon(&["eval", "--model", &corpus("inputs/three.model"), "--formula", "P(eps x. P(x))"]);
    assert_eq!((code, out.trim()), (0, "true"));
    assert_eq!(epsilon(&["check-model", "--model", &corpus("inputs/three.model"), "--formula", "R(x, f(x))"]).0, 0);
    let (code, out, _) = epsilon(&["kripke-check", "--structure", &corpus("inputs/later.kripke"), "--formula", "F(a) or not F(a)"]);
    assert_eq!(code, 0);
    assert!(out.contains("forced at {m1}"), "{out}");
    let space = corpus("inputs/three-point.space");
    assert_eq!(epsilon(&["heyting", "--space", &space, "--formula", "X -> not not X", "--require-valid"]).0, 0);
    assert_eq!(epsilon(&["heyting", "--space", &space, "--formula", "not not X -> X", "--require-valid"]).0, 1);
}
