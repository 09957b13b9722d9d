use std::process::{Command, Output};

use serde_json::Value;

use hilbsq::report::canonicalize;

fn hilbsq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hilbsq")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (String, Value) {
    let out = hilbsq(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let value = serde_json::from_str(&text).unwrap();
    (text, value)
}

fn stage<'a>(report: &'a Value, id: &str) -> &'a Value {
    report["stages"].as_array().unwrap().iter().find(|s| s["id"] == id).unwrap()
}

#[test]
fn verify_seven_is_potentially_dense() {
    let (_, v) = json(&["verify", "--a", "7", "--format", "json"]);
    assert_eq!(v["a"], "7");
    assert_eq!(v["verdict"], "POTENTIALLY_DENSE");
    assert_eq!(v["stages"].as_array().unwrap().len(), 8);
    let delta = &stage(&v, "8")["witnesses"];
    assert_eq!(delta["delta_e2"], "-4");
    assert_eq!(delta["delta_image_e2"], "356");
    let spectral = &stage(&v, "7")["witnesses"]["char_poly"];
    assert_eq!(spectral, "t^3 - 24t^2 + 24t - 1");
}

#[test]
fn verify_five_is_elliptic() {
    let (_, v) = json(&["verify", "--a", "5", "--format", "json"]);
    assert_eq!(v["verdict"], "ELLIPTIC_CASE");
    assert_eq!(v["failing_stage"], "2");
    assert_eq!(stage(&v, "2")["pass"], false);
}

#[test]
fn negative_parameter_is_accepted() {
    let out = hilbsq(&["verify", "--a", "-7"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("NOT_ESTABLISHED"));
}

#[test]
fn invalid_input_exits_with_two() {
    for args in [
        &["verify", "--a", "4"][..],
        &["verify", "--a", "-3"],
        &["verify", "--a", "abc"],
        &["scan", "--from", "13", "--to", "5"],
        &["scan", "--from", "2", "--to", "9"],
        &["matrix", "--a", "0"],
        &["verify", "--a", "7", "--format", "yaml"],
    ] {
        let out = hilbsq(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn matrix_product_for_seven() {
    let (_, v) = json(&["matrix", "--a", "7", "--format", "json"]);
    let expected = serde_json::json!([["32", "8", "13"], ["-24", "-5", "-9"], ["-7", "-2", "-3"]]);
    assert_eq!(v["product"], expected);
    assert_eq!(v["invariant_class"], serde_json::json!(["2", "-11", "2"]));
    let text = String::from_utf8(hilbsq(&["matrix", "--a", "7"]).stdout).unwrap();
    assert!(text.contains("t^3 - 24t^2 + 24t - 1"));
}

#[test]
fn json_output_is_canonical() {
    for args in [
        &["verify", "--a", "13", "--format", "json"][..],
        &["scan", "--from", "5", "--to", "13", "--format", "json"],
        &["matrix", "--a", "8", "--format", "json"],
    ] {
        let (text, _) = json(args);
        let body = text.strip_suffix('\n').unwrap();
        assert_eq!(canonicalize(body).unwrap(), body, "{args:?}");
    }
}

#[test]
fn scan_row_agrees_with_verify() {
    let (_, scan) = json(&["scan", "--from", "5", "--to", "13", "--format", "json"]);
    let rows = scan["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    let dense: Vec<&str> =
        rows.iter().filter(|r| r["verdict"] == "POTENTIALLY_DENSE").map(|r| r["a"].as_str().unwrap()).collect();
    assert_eq!(dense, ["7", "13"]);
    for row in rows {
        let a = row["a"].as_str().unwrap();
        let (_, single) = json(&["verify", "--a", a, "--format", "json"]);
        assert_eq!(row["verdict"], single["verdict"], "a = {a}");
        assert_eq!(row["failing_stage"], single["failing_stage"], "a = {a}");
    }
    assert_eq!(scan["summary"]["POTENTIALLY_DENSE"], "2");
}

#[test]
fn text_scan_has_summary() {
    let out = hilbsq(&["scan", "--from", "5", "--to", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().last().unwrap().starts_with("summary: 4 parameters"));
}
