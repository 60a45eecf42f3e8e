use std::path::PathBuf;
use std::process::{Command, Output};

fn example(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name).display().to_string()
}

fn run(args: &[&str]) -> (String, i32) {
    let Output { stdout, status, .. } = Command::new(env!("CARGO_BIN_EXE_vanishing")).args(args).output().unwrap();
    (String::from_utf8(stdout).unwrap(), status.code().unwrap())
}

fn line<'a>(out: &'a str, prefix: &str) -> &'a str {
    out.lines().find(|l| l.starts_with(prefix)).unwrap_or_else(|| panic!("no '{prefix}' in:\n{out}"))
}

#[test]
fn brackets() {
    assert_eq!(run(&["bracket", &example("basic.germ"), "1", "2"]), ("0\n".into(), 0));
    assert_eq!(run(&["bracket", &example("henon_heiles.germ"), "1", "2"]), ("0\n".into(), 0));
    assert_eq!(run(&["bracket", &example("canonical_pair.germ"), "1", "2"]), ("1\n".into(), 0));
    assert_eq!(run(&["bracket", &example("canonical_pair.germ"), "2", "1"]), ("-1\n".into(), 0));
    let (out, code) = run(&["bracket", &example("henon_heiles_sign_variant.germ"), "1", "2"]);
    assert_eq!((out.trim(), code), ("-16*q1^3*p1", 0));
    assert_eq!(run(&["bracket", &example("basic.germ"), "1", "9"]).1, 2);
    assert_eq!(run(&["bracket", "missing.germ", "1", "2"]).1, 2);
}

#[test]
fn discriminants() {
    let (out, code) = run(&["discriminant", &example("basic.germ")]);
    assert_eq!(code, 0);
    assert_eq!(line(&out, "reduced:"), "reduced: s1");
    assert_eq!(line(&out, "multiplicity:"), "multiplicity: 1");

    let (out, code) = run(&["discriminant", &example("al6.germ")]);
    assert_eq!(code, 0);
    assert_eq!(line(&out, "multiplicity:"), "multiplicity: 3");

    let (out, code) = run(&["discriminant", &example("henon_heiles.germ")]);
    assert_eq!(code, 0);
    assert_eq!(line(&out, "reduced:"), "reduced: 27*s1^4*s2 + 16*s2^4");
    assert_eq!(line(&out, "multiplicity:"), "multiplicity: 4");

    let (out, code) = run(&["discriminant", "--given", "s2*(s2^3-s1^4)"]);
    assert_eq!(code, 0);
    assert_eq!(line(&out, "multiplicity:"), "multiplicity: 4");

    let (out, code) = run(&["discriminant", &example("morse.germ")]);
    assert_eq!(code, 0);
    assert_eq!(line(&out, "milnor number:"), "milnor number: 1");
}

#[test]
fn discriminant_budget_and_usage_errors() {
    let (out, code) = run(&["discriminant", &example("al6.germ"), "--budget", "0"]);
    assert_eq!(code, 3);
    assert!(out.starts_with("status: skipped-budget\n"));
    assert_eq!(run(&["discriminant"]).1, 2);
    assert_eq!(run(&["discriminant", "--given", "s1*-1"]).1, 2);
    assert_eq!(run(&["frobnicate"]).1, 2);
}

#[test]
fn coxeter_checks() {
    let (out, code) = run(&["coxeter", "G2", "--format", "machine"]);
    assert_eq!(code, 0);
    assert!(out.contains("CHECK order pass expected=12 got=12"));
    assert!(out.contains("CHECK coxeter-element pass expected=6 got=6"));
    let (out, code) = run(&["coxeter", "A2", "--check", "order", "--format", "machine"]);
    assert_eq!((out.as_str(), code), ("CHECK order pass expected=6 got=6\n", 0));
    assert_eq!(run(&["coxeter", "H3"]).1, 2);
    assert_eq!(run(&["coxeter", "A0"]).1, 2);
}

#[test]
fn folds() {
    let (out, code) = run(&["fold", "D4", "full", "--format", "machine"]);
    assert_eq!(code, 0);
    assert!(out.contains("got=G2"));
    assert!(out.contains("CHECK group-order pass expected=6 got=6"));
    assert!(out.contains("CHECK group-abelian pass expected=no got=no"));
    let (out, code) = run(&["fold", "A5", "flip", "--format", "machine"]);
    assert_eq!(code, 0);
    assert!(out.contains("got=C3"));
    let (out, _) = run(&["fold", "D5", "flip", "--format", "machine"]);
    assert!(out.contains("got=B4"));
    assert_eq!(run(&["fold", "B3", "flip"]).1, 2);
    assert_eq!(run(&["fold", "A3", "perm:1,3,2"]).1, 2);
}

#[test]
fn steinberg_checks() {
    let (out, code) = run(&["steinberg", "--rank", "2", "--check", "discriminant", "--format", "machine"]);
    assert_eq!(code, 0);
    assert!(out.contains("CHECK discriminant-multiplicity pass expected=2 got=2"));
    let (out, code) = run(&["steinberg", "--rank", "2", "--check", "rank", "--format", "machine"]);
    assert_eq!(code, 0);
    assert!(out.contains("CHECK rank-subregular pass expected=1 got=1"));
    assert!(out.contains("CHECK rank-regular pass expected=2 got=2"));
    let (out, code) = run(&["steinberg", "--rank", "1", "--format", "machine"]);
    assert_eq!(code, 0);
    assert!(!out.contains(" fail "));
    assert_eq!(run(&["steinberg", "--rank", "3"]).1, 2);
}

#[test]
fn suite_output_is_deterministic() {
    let (a, code) = run(&["suite", "--format", "machine"]);
    assert_eq!(code, 0);
    assert_eq!(a.lines().count(), 12);
    assert!(a.lines().all(|l| l.starts_with("CHECK ") && l.contains(" pass ")));
    assert_eq!(run(&["suite", "--format", "machine"]).0, a);
}

#[test]
fn suite_with_zero_budget() {
    let (out, code) = run(&["suite", "--budget", "0", "--format", "machine"]);
    assert_eq!(code, 0);
    for l in out.lines() {
        if l.starts_with("CHECK basic-discriminant ") {
            assert!(l.contains(" skipped-budget "), "{l}");
        } else {
            assert!(l.contains(" pass "), "{l}");
        }
    }
}
