use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prospecies")).current_dir(root()).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = run(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn present_fix_b_matches_golden() {
    let o = run(&["present", "instances/fix_b.prosp"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("present_fix_b.txt"));
}

#[test]
fn preprojective_fix_a_matches_golden() {
    let o = run(&["--json", "preprojective", "instances/fix_a.prosp", "--truncate", "3"]);
    assert_eq!(stdout(&o), golden("preprojective_fix_a.json"));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["graded_dims"], serde_json::json!([2, 2, 0]));
    assert_eq!(v["result"]["finite_certified"], Value::Bool(true));
    assert_eq!(v["result"]["conventions"]["starred_bimodule"], "right_dual");
}

#[test]
fn dualisable_fix_c_matches_golden() {
    let o = run(&["--json", "check", "dualisable", "instances/fix_c.prosp"]);
    assert_eq!(stdout(&o), golden("check_dualisable_fix_c.json"));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["dualisable"], Value::Bool(true));
}

#[test]
fn present_pi_fix_c_matches_golden() {
    let o = run(&["--json", "present-pi", "instances/fix_c.prosp"]);
    assert_eq!(stdout(&o), golden("present_pi_fix_c.json"));
}

#[test]
fn every_report_carries_the_schema_keys() {
    let cases: &[&[&str]] = &[
        &["tensor-algebra", "instances/fix_b.prosp"],
        &["present", "instances/fix_c.prosp"],
        &["present-pi", "instances/fix_a.prosp"],
        &["preprojective", "instances/fix_c.prosp"],
        &["check", "dualisable", "instances/fix_b.prosp"],
        &["check", "locally-projective", "instances/fix_c.prosp"],
        &["check", "gorenstein", "instances/fix_c.prosp", "--n", "0"],
        &["check", "gp", "instances/fix_c.prosp"],
        &["reflect", "instances/fix_a_simple.prosp", "--vertex", "1", "--dir", "+"],
        &["reflect", "instances/fix_c.prosp", "--vertex", "2", "--dir", "-"],
        &["separate", "instances/fix_c.prosp"],
        &["stable-hom", "instances/fix_c.prosp", "--count", "2"],
        &["valuation", "instances/fix_b.prosp"],
        &["resolve", "instances/fix_a.prosp", "--length", "2"],
    ];
    for args in cases {
        let v = json(args);
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["command", "field", "instance_hash", "result"], "{args:?}");
        assert_eq!(v["command"], Value::String(args[0].into()));
        assert_eq!(v["field"], Value::String("Q".into()));
        assert_eq!(v["instance_hash"].as_str().unwrap().len(), 64);
    }
}

#[test]
fn outputs_are_byte_stable() {
    for args in [&["stable-hom", "instances/fix_c.prosp"][..], &["reflect", "instances/fix_c.prosp", "--vertex", "1", "--dir", "+"]] {
        assert_eq!(stdout(&run(args)), stdout(&run(args)));
    }
}

#[test]
fn seed_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_prospecies"))
        .current_dir(root())
        .env("PROSPECIES_SEED", "7")
        .args(["--json", "stable-hom", "instances/fix_c.prosp", "--count", "2"])
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["seed"], serde_json::json!(7));
    assert_eq!(v["result"]["agree"], Value::Bool(true));
}

#[test]
fn reflection_reports_agree() {
    let v = json(&["reflect", "instances/fix_c.prosp", "--vertex", "1", "--dir", "+"]);
    for m in v["result"]["modules"].as_array().unwrap() {
        assert_eq!(m["ideal_description_iso"], Value::Bool(true));
        assert_eq!(m["sequences_exact"], Value::Bool(true));
    }
}

#[test]
fn exit_codes() {
    let dir = std::env::temp_dir().join(format!("prospecies-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.prosp");
    std::fs::write(&bad, "quiver { vertex 1 2; arrow a 1 -> 2; }\n").unwrap();
    let cyclic = dir.join("cyclic.prosp");
    std::fs::write(&cyclic, "quiver { vertex 1; arrow a: 1 -> 1; }\nbimodule a { kind: regular }\n").unwrap();
    let wrong = dir.join("wrong.prosp");
    std::fs::write(&wrong, "quiver { vertex 1 2; arrow a: 1 -> 2; }\nbimodule a { kind: gls(2, 2, 1, 2, 1) }\n").unwrap();

    let o = run(&["--json", "present", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["error"], Value::String("parse error at line 1, column 30: expected ':'".into()));

    assert_eq!(run(&["tensor-algebra", cyclic.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(run(&["valuation", wrong.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(run(&["reflect", "instances/fix_a.prosp", "--vertex", "9", "--dir", "+"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate", "instances/fix_a.prosp"]).status.code(), Some(2));
    assert_eq!(run(&["present", "instances/missing.prosp"]).status.code(), Some(2));
    assert_eq!(run(&["preprojective", "instances/fix_a.prosp", "--truncate", "2"]).status.code(), Some(2));
    assert_eq!(run(&["present", "instances/fix_a.prosp"]).status.code(), Some(0));
    std::fs::remove_dir_all(&dir).unwrap();
}
