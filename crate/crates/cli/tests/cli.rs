use serde_json::Value;
use std::io::Write;
use std::process::{Command, Stdio};

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_branchdisc")).args(args).output().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{}: {}", e, String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn run_stdin(args: &[&str], input: &str) -> (i32, Value) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_branchdisc"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), serde_json::from_slice(&out.stdout).unwrap())
}

#[test]
fn classify_mult3() {
    let (code, v) = run(&["classify", r#"{"family":"Mult3","s1":7,"lambda":8}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["predicted"]["text"], "D1; S(D1)=<2,15>");
    assert_eq!(v["predicted"]["branches"][0]["char"], serde_json::json!([2, 15]));
}

#[test]
fn discriminant_of_a_cusp_like_curve() {
    let (code, v) = run(&["discriminant", "y^2 - x^5"]);
    assert_eq!(code, 0);
    assert_eq!(v["discriminant"], "v + u^5");
    assert_eq!(v["nondegenerate"], true);
    assert_eq!(v["type"]["text"], "D1; S(D1)=<1>");
    assert_eq!(v["roots_agree"], true);
}

#[test]
fn degenerate_discriminant_has_a_witness() {
    let (code, v) = run(&["discriminant", "y^3 - x^7"]);
    assert_eq!(code, 0);
    assert_eq!(v["discriminant"], "v^2 + 2*u^7*v + u^14");
    assert_eq!(v["nondegenerate"], false);
    assert_eq!(v["degeneracy_witness"]["repeated_factor"], "z + 1");
}

#[test]
fn verify_mult4_genus_two() {
    let (code, v) = run(&["verify", r#"{"family":"Mult4G2","s1":6,"s2":13}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["match"], true);
    assert_eq!(v["computed"]["type"]["intersections"][0][1], 12);
}

#[test]
fn analyze_parametrization() {
    let (code, v) = run(&["analyze", "x = t^4; y = t^6 + t^7"]);
    assert_eq!(code, 0);
    assert_eq!(v["invariants"]["semigroup"], serde_json::json!([4, 6, 13]));
    assert_eq!(v["invariants"]["milnor"], 16);
    assert_eq!(v["invariants"]["tjurina"], 14);
    assert_eq!(v["puiseux"]["roots"].as_array().unwrap().len(), 4);
}

#[test]
fn stdin_input() {
    let (code, v) = run_stdin(&["discriminant"], "y^2 - x^5\n");
    assert_eq!(code, 0);
    assert_eq!(v["discriminant"], "v + u^5");
    let (code, v) = run_stdin(&["classify", "-"], r#"{"family":"Mult2","s1":5}"#);
    assert_eq!(code, 0);
    assert_eq!(v["predicted"]["text"], "D1; S(D1)=<1>");
}

#[test]
fn exit_codes() {
    let (code, v) = run(&["discriminant", "y^2 - x^3 + z"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "parse-error");
    assert_eq!(v["error"]["position"], 12);
    let (code, v) = run(&["discriminant", "y^2 - * x"]);
    assert_eq!(code, 2);
    assert!(v["error"]["position"].is_u64());
    let (code, v) = run(&["classify", r#"{"family":"Mult3","s1":7,"lambda":9}"#]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["kind"], "invalid-descriptor");
    let (code, _) = run(&["--precision", "8", "classify", "{}"]);
    assert_eq!(code, 2);
    let (code, v) = run(&["--trunc-order", "-1", "analyze", "y^2 - x^3"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "parse-error");
    let (code, _) = run(&["table", "99"]);
    assert_eq!(code, 1);
}

#[test]
fn text_format() {
    let out = Command::new(env!("CARGO_BIN_EXE_branchdisc"))
        .args(["--format", "text", "classify", r#"{"family":"Mult3","s1":7,"lambda":8}"#])
        .output()
        .unwrap();
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("text: D1; S(D1)=<2,15>"), "{}", s);
}

#[test]
fn table_is_deterministic() {
    let a = run(&["table", "2"]);
    let b = run(&["table", "2"]);
    assert_eq!(a, b);
    assert_eq!(a.1["matched"], 6);
    let rows = a.1["rows"].as_array().unwrap();
    assert_eq!(rows[1]["descriptor"]["lambda"], 8);
    let c = run(&["--seed", "3", "verify", r#"{"family":"R2B","s0":5,"s1":7}"#]);
    let d = run(&["--seed", "3", "verify", r#"{"family":"R2B","s0":5,"s1":7}"#]);
    assert_eq!(c, d);
}
