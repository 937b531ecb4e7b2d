//! End-to-end runs of the command line through `cli::run`.

use std::path::{Path, PathBuf};

use color_euler::cli::{run, EXIT_BUDGET, EXIT_INPUT, EXIT_MISMATCH, EXIT_OK};
use color_euler::io::SpecFile;
use serde_json::Value;
use tempfile::TempDir;

const SUPER_0_1: &str = r#"{"group": {"invariant_factors": [2]}, "parity": [1], "algebra": {"dims": {"[1]": 1}}}"#;
const SUPER_1_1: &str = r#"{"group": {"invariant_factors": [2]}, "parity": [1], "algebra": {"dims": {"[0]": 1, "[1]": 1}}}"#;
const SUPER_2_1: &str = r#"{"group": {"invariant_factors": [2]}, "parity": [1], "algebra": {"dims": {"[0]": 2, "[1]": 1}}}"#;
const Z4: &str = r#"{"group": {"invariant_factors": [4]}, "parity": [1], "algebra": {"dims": {"[0]": 1, "[1]": 1}}}"#;
const ZERO: &str = r#"{"group": {"invariant_factors": [3]}, "parity": [0], "algebra": {"dims": {}}}"#;

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("color-euler").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = call(args);
    assert!(!out.is_empty(), "no report; stderr: {err}");
    (code, serde_json::from_str(&out).unwrap())
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn series_strings(report: &Value) -> Vec<Value> {
    report["series"].as_array().unwrap().clone()
}

#[test]
fn series_examples() {
    let dir = TempDir::new().unwrap();
    let s01 = write(&dir, "s01.json", SUPER_0_1);
    let (code, r) = json(&["series", p(&s01), "--order", "4", "--variant", "super"]);
    assert_eq!(code, EXIT_OK);
    let one = serde_json::json!({"[0]": "1"});
    let theta = serde_json::json!({"[1]": "1"});
    assert_eq!(series_strings(&r), vec![one.clone(), theta.clone(), one.clone(), theta, one]);

    let zero = write(&dir, "zero.json", ZERO);
    let (_, r) = json(&["series", p(&zero), "--order", "3"]);
    let s = series_strings(&r);
    assert_eq!(s[0], serde_json::json!({"[0]": "1"}));
    assert!(s[1..].iter().all(|c| c.as_object().unwrap().is_empty()));

    let s21 = write(&dir, "s21.json", SUPER_2_1);
    let (_, r) = json(&["series", p(&s21), "--order", "4", "--variant", "ordinary"]);
    let got: Vec<String> = series_strings(&r).iter().map(|c| c["[]"].as_str().unwrap().to_string()).collect();
    assert_eq!(got, ["1", "3", "4", "4", "4"]);
}

#[test]
fn default_order_is_used() {
    let dir = TempDir::new().unwrap();
    let z4 = write(&dir, "z4.json", Z4);
    let (_, r) = json(&["series", p(&z4)]);
    assert_eq!(r["order"], 32);
    assert_eq!(series_strings(&r).len(), 33);
}

#[test]
fn chi_examples() {
    let dir = TempDir::new().unwrap();
    let s01 = write(&dir, "s01.json", SUPER_0_1);
    let (code, r) = json(&["chi", p(&s01), "--variant", "ordinary", "--method", "abel"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r["exact"]["value"], serde_json::json!({"[]": "1/2"}));
    assert_eq!(r["crosscheck"]["verdict"]["status"], "converged");

    let s11 = write(&dir, "s11.json", SUPER_1_1);
    let (_, r) = json(&["chi", p(&s11), "--variant", "super"]);
    assert_eq!(r["exact"]["value"], serde_json::json!({"[0]": "1/2", "[1]": "-1/2"}));

    let (_, r) = json(&["chi", p(&s01), "--variant", "super"]);
    assert_eq!(r["exact"]["status"], "diverges");
    let w: Vec<&str> = r["exact"]["witnesses"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert!(w.contains(&"[0]"));
}

#[test]
fn conditional_note_appears_with_the_flag() {
    let dir = TempDir::new().unwrap();
    let s21 = write(&dir, "s21.json", SUPER_2_1);
    let (_, r) = json(&["chi", p(&s21), "--variant", "super", "--assume-boundary-char"]);
    assert_eq!(r["conditional"]["status"], "conditional");
    assert!(r["conditional"]["note"].as_str().unwrap().contains("conditional"));
    let (_, r) = json(&["chi", p(&s21), "--variant", "super"]);
    assert!(r.get("conditional").is_none());
}

#[test]
fn other_methods_and_budget() {
    let dir = TempDir::new().unwrap();
    let s01 = write(&dir, "s01.json", SUPER_0_1);
    let (code, r) = json(&["chi", p(&s01), "--variant", "ordinary", "--method", "cesaro:1"]);
    assert_eq!(code, EXIT_OK);
    let v = r["result"]["value_numeric"]["[]"].as_f64().unwrap();
    assert!((v - 0.5).abs() < 1e-6);
    let s21 = write(&dir, "s21.json", SUPER_2_1);
    let (code, r) = json(&["chi", p(&s21), "--variant", "ordinary", "--method", "euler", "--budget", "32"]);
    assert_eq!(code, EXIT_BUDGET);
    assert_eq!(r["result"]["status"], "fails");
}

#[test]
fn verify_specs_and_reports() {
    let dir = TempDir::new().unwrap();
    for (name, text) in [("s21.json", SUPER_2_1), ("z4.json", Z4)] {
        let path = write(&dir, name, text);
        let (code, r) = json(&["verify", p(&path)]);
        assert_eq!(code, EXIT_OK, "{r}");
        assert_eq!(r["checks"]["oracle"], "pass");
    }

    let s21 = write(&dir, "s21.json", SUPER_2_1);
    let (_, out, _) = call(&["series", p(&s21), "--order", "6", "--variant", "color"]);
    let good = write(&dir, "good.json", &out);
    assert_eq!(call(&["verify", p(&good)]).0, EXIT_OK);

    let mut report: Value = serde_json::from_str(&out).unwrap();
    report["series"][3]["[1]"] = Value::String("5".into());
    let bad = write(&dir, "bad.json", &report.to_string());
    let (code, r) = json(&["verify", p(&bad)]);
    assert_eq!(code, EXIT_MISMATCH);
    assert_eq!(r["mismatches"][0]["detail"]["degree"], 3);
    assert_eq!(r["mismatches"][0]["detail"]["element"], "[1]");
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"group": {"invariant_factors": [3]}, "parity": [1], "algebra": {"dims": {}}}"#);
    let (code, out, err) = call(&["series", p(&bad)]);
    assert_eq!((code, out.is_empty()), (EXIT_INPUT, true));
    assert!(err.starts_with("error:"));
    let unknown = write(&dir, "u.json", r#"{"group": {"invariant_factors": [2]}, "parity": [1], "algebra": {"dims": {}}, "x": 0}"#);
    assert_eq!(call(&["chi", p(&unknown)]).0, EXIT_INPUT);
    assert_eq!(call(&["series", "/nonexistent/spec.json"]).0, EXIT_INPUT);
    assert_eq!(call(&["frobnicate"]).0, EXIT_INPUT);
    let s01 = write(&dir, "s01.json", SUPER_0_1);
    assert_eq!(call(&["chi", p(&s01), "--method", "borel"]).0, EXIT_INPUT);
    let big = write(&dir, "big.json", r#"{"group": {"invariant_factors": [2]}, "parity": [1], "algebra": {"dims": {"[0]": 7, "[1]": 6}}}"#);
    assert_eq!(call(&["verify", p(&big)]).0, EXIT_INPUT);
}

#[test]
fn reports_are_deterministic_and_echo_the_spec() {
    let dir = TempDir::new().unwrap();
    let z4 = write(&dir, "z4.json", Z4);
    for args in [vec!["series", p(&z4), "--order", "10"], vec!["chi", p(&z4)], vec!["verify", p(&z4)]] {
        let first = call(&args);
        assert_eq!(first, call(&args));
        let r: Value = serde_json::from_str(&first.1).unwrap();
        let echoed: SpecFile = serde_json::from_value(r["spec"].clone()).unwrap();
        let original = SpecFile::from_json(Z4).unwrap().to_spec().unwrap();
        assert_eq!(echoed.to_spec().unwrap(), original);
    }
}

#[test]
fn floats_only_under_numeric_keys() {
    fn walk(v: &Value, key: &str, numeric: bool) {
        let numeric = numeric || key.ends_with("_numeric");
        match v {
            Value::Number(n) if n.is_f64() => assert!(numeric, "float under {key}"),
            Value::Array(a) => a.iter().for_each(|x| walk(x, key, numeric)),
            Value::Object(o) => o.iter().for_each(|(k, x)| walk(x, k, numeric)),
            _ => {}
        }
    }
    let dir = TempDir::new().unwrap();
    let s11 = write(&dir, "s11.json", SUPER_1_1);
    for method in ["abel", "cesaro:1", "euler"] {
        let (_, r) = json(&["chi", p(&s11), "--variant", "super", "--method", method]);
        walk(&r, "", false);
    }
}
