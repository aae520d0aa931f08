use std::process::Command;

use g2_core::cli::{run, EXIT_INVALID, EXIT_OK};
use serde_json::Value;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("g2orbit").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = invoke(args);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn classify_json() {
    let v = json(&["classify", "--tau", "1,0,-1", "--json"]);
    assert_eq!(v["stabilizer_dim"], 4);
    assert_eq!(v["orbit_type"], "DIM4_SHORT");
    assert_eq!(v["orbit_label"], "G2/((Sp(1)xU(1))/Z2)");
    assert_eq!(v["tau"], serde_json::json!(["1", "0", "-1"]));
    assert_eq!(v["structure"]["derived_dim"], 3);
    assert_eq!(v["structure"]["center_dim"], 1);
    assert_eq!(v["vanishing_roots"].as_array().unwrap().len(), 2);
}

#[test]
fn classify_accepts_rationals_and_other_convention() {
    let v = json(&["classify", "--tau", "1/2,1/2,-1", "--json", "--convention", "short=u1xsp1"]);
    assert_eq!(v["orbit_type"], "DIM4_LONG");
    assert_eq!(v["orbit_label"], "G2/((Sp(1)xU(1))/Z2)");
    let v = json(&["classify", "--tau", "1,0,-1", "--json", "--convention", "short=u1xsp1"]);
    assert_eq!(v["orbit_label"], "G2/((U(1)xSp(1))/Z2)");
}

#[test]
fn classify_text_output() {
    let (code, out, _) = invoke(&["classify", "--tau", "1,2,-3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("TORUS"));
    assert!(out.contains("G2/(U(1)xU(1))"));
}

#[test]
fn nonzero_sum_is_rejected_unless_projected() {
    let (code, _, err) = invoke(&["classify", "--tau", "1,1,1"]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("SUM_NONZERO"));
    let v = json(&["classify", "--tau", "1,1,1", "--project", "--json"]);
    assert_eq!(v["orbit_type"], "FULL");
    assert_eq!(v["stabilizer_dim"], 14);
    let v = json(&["classify", "--tau", "2,0,1", "--project", "--json"]);
    assert_eq!(v["tau"], serde_json::json!(["1", "-1", "0"]));
    assert_eq!(v["orbit_type"], "DIM4_SHORT");
}

#[test]
fn malformed_input_exits_two() {
    for args in [
        &["classify", "--tau", "1,2"][..],
        &["classify", "--tau", "a,b,c"],
        &["classify", "--tau", "1/0,0,0"],
        &["classify", "--tau", "1,0,-1", "--convention", "bogus"],
        &["scan", "--radius", "0"],
        &["scan", "--radius", "2", "--format", "xml"],
        &["frobnicate"],
    ] {
        let (code, _, err) = invoke(args);
        assert_eq!(code, EXIT_INVALID, "{args:?}");
        assert!(!err.is_empty());
    }
}

#[test]
fn scan_formats() {
    let v = json(&["scan", "--radius", "2"]);
    assert_eq!(v["radius"], 2);
    assert_eq!(v["only_expected_dims"], true);
    assert_eq!(v["points"].as_array().unwrap().len(), 19);
    assert_eq!(v["counts"]["DIM4_LONG"], 6);
    let (code, out, _) = invoke(&["scan", "--radius", "1", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "tau1,tau2,tau3,stabilizer_dim,orbit_type");
    assert_eq!(lines.len(), 8);
}

#[test]
fn roots_and_derivations() {
    let v = json(&["roots"]);
    let roots = v["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 12);
    assert_eq!(roots.iter().filter(|r| r["length_class"] == "short").count(), 6);
    let v = json(&["derivations"]);
    assert_eq!(v["dim"], 14);
    assert_eq!(v["basis"].as_array().unwrap().len(), 14);
    assert_eq!(v["structure_constants"][0][1].as_array().unwrap().len(), 14);
}

#[test]
fn table_json() {
    let v = json(&["table", "--json"]);
    assert_eq!(v["products"][1][2], serde_json::json!(["0", "0", "0", "1", "0", "0", "0", "0"]));
    assert_eq!(v["products"][3][3][0], "-1");
}

#[test]
fn check_passes() {
    let (code, out, _) = invoke(&["check"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 11);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_g2orbit");
    let ok = Command::new(bin).args(["classify", "--tau", "1,0,-1", "--json"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["stabilizer_dim"], 4);
    let bad = Command::new(bin).args(["classify", "--tau", "1,1,1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_INVALID));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("SUM_NONZERO"));
}
