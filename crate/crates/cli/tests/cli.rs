use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

const DUAL_NUMBERS: &str = r#"{"base":"GF(5)","rank":2,
  "structure_constants":[[[1,0],[0,1]],[[0,1],[0,0]]],
  "identity":[1,0],"names":["1","eps"]}"#;

const F3_SQUARED: &str = r#"{"base":"GF(3)","rank":2,
  "structure_constants":[[[1,0],[0,0]],[[0,0],[0,1]]],
  "identity":[1,1]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smoothring"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--report", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v = serde_json::from_str(&stdout(&out)).unwrap_or_else(|e| panic!("{e}: {}", stdout(&out)));
    (v, code(&out))
}

fn document(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn ring_check_exit_codes() {
    let out = run(&["ring", "check", "Z/7"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("semi-integral: true"));

    let (v, c) = json(&["ring", "check", "Z/6"]);
    assert_eq!(c, 1);
    assert_eq!(v["semi_integral"], false);
    assert_eq!(v["proper"], true);

    assert_eq!(code(&run(&["ring", "check", "Z/1x"])), 2);
    assert_eq!(code(&run(&["ring", "check", "GF(3)[t]"])), 0);
}

#[test]
fn smooth_commands() {
    let (v, c) = json(&["smooth", "eval", "--omega", r"Z\{0}", "--expr", "z82", "--at", "2"]);
    assert_eq!(c, 0);
    assert_eq!(v["value"], "-3");

    let out = run(&["smooth", "derive", "--expr", "x^3", "--at", "1", "--order", "2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains('6'), "{}", stdout(&out));

    let (v, _) = json(&["smooth", "jet", "--omega", r"Z\{0}", "--expr", "z82", "--at", "2"]);
    assert_eq!(v["coefficients"], serde_json::json!(["-3", "-4", "460799"]));

    let out = run(&["smooth", "decompose", "--expr", "x^2 + 1", "--at", "-1"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn text_and_json_carry_the_same_fields() {
    let out = run(&["smooth", "jet", "--expr", "x^2", "--at", "1", "--order", "3"]);
    let text = stdout(&out);
    let (v, _) = json(&["smooth", "jet", "--expr", "x^2", "--at", "1", "--order", "3"]);
    assert!(text.contains(v["jet"].as_str().unwrap()), "{text}");
}

#[test]
fn obstruction_and_absorbing() {
    let (v, c) = json(&["smooth", "obstruction", "--expr", "x^2 - x", "--divisor", "2"]);
    assert_eq!(c, 1);
    assert_eq!(v["witness"]["t"], "2");
    assert_eq!(v["witness"]["lambda"], "0");

    let out = run(&["smooth", "obstruction", "--expr", "x^2 - x", "--order", "2"]);
    assert_eq!(code(&out), 0);

    assert_eq!(code(&run(&["smooth", "check-absorbing", "--omega", "{5}"])), 1);
    assert_eq!(code(&run(&["smooth", "check-absorbing", "--omega", r"Z\{0}"])), 0);
}

#[test]
fn errors_map_to_exit_codes() {
    // parse error
    assert_eq!(code(&run(&["smooth", "eval", "--expr", "x^", "--at", "1"])), 2);
    // unknown subcommand
    assert_eq!(code(&run(&["smooth", "frobnicate"])), 2);
    // outside the domain
    assert_eq!(code(&run(&["smooth", "eval", "--omega", r"Z\{0}", "--expr", "z82", "--at", "0"])), 3);
    // depth gate
    assert_eq!(code(&run(&["witness", "verify", "--depth", "4"])), 2);
    assert_eq!(code(&run(&["witness", "verify", "--depth", "9", "--allow-deep"])), 2);
}

#[test]
fn witness_verify_default_depth() {
    let (v, c) = json(&["witness", "verify"]);
    assert_eq!(c, 0);
    assert_eq!(v["verdict"], true);
    assert_eq!(v["steps"][0]["omega"], "513");
    assert_eq!(v["parity"]["z_at_2"], "-3");

    let out = run(&["--digits-limit", "10", "witness", "verify"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn algebra_analyze_documents() {
    let f = document(DUAL_NUMBERS);
    let path = f.path().to_str().unwrap();
    let (v, c) = json(&["algebra", "analyze", path, "--enumerate-type-c", "--enumerate-type-d", "--compat-graph"]);
    assert_eq!(c, 0);
    assert_eq!(v["characters"], 1);
    assert_eq!(v["type_c_ideals"], serde_json::json!(["span{eps}"]));
    assert_eq!(v["type_d_submodules"].as_array().unwrap().len(), 1);

    let g = document(F3_SQUARED);
    let (v, _) = json(&["algebra", "analyze", g.path().to_str().unwrap(), "--enumerate-type-d"]);
    assert_eq!(v["characters"], 2);
    assert_eq!(v["type_d_submodules"], serde_json::json!([]));

    let out = run(&["algebra", "analyze", path, "--smooth-pairs"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("smooth pairs"));

    let bad = document(r#"{"base":"GF(4)","rank":1,"structure_constants":[[[1]]],"identity":[1]}"#);
    assert_eq!(code(&run(&["algebra", "analyze", bad.path().to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["algebra", "analyze", "/nonexistent/algebra.json"])), 2);
}
