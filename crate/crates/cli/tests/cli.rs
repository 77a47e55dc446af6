use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_poissonlie")).args(args).arg("--json").output().unwrap();
    let report = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().unwrap(), report)
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn verify_heisenberg() {
    let (code, r) = run(&["verify", &path("heisenberg.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["solvable"], true);
    assert_eq!(r["nilpotent"], true);
    assert_eq!(r["bound"], 6);
}

#[test]
fn z_is_central() {
    let (code, r) = run(&["bracket", &path("heisenberg.json"), "-p", "x*y", "-q", "z"]);
    assert_eq!(code, 0);
    assert_eq!(r["bracket"], "0");
    let (_, r) = run(&["bracket", &path("heisenberg.json"), "-p", "x", "-q", "y^2"]);
    assert_eq!(r["bracket"], "2*y*z");
}

#[test]
fn quotient_is_weyl() {
    let (code, r) = run(&["decompose", &path("heisenberg-z1.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["e"], "1");
    assert_eq!(r["n"], 1);
    assert_eq!(r["pairs"], serde_json::json!([["x", "y"]]));
    assert_eq!(r["bookkeeping"]["holds"], true);
}

#[test]
fn max_degree_overrides_the_file() {
    let (_, r) = run(&["center", &path("heisenberg.json"), "--max-degree", "3"]);
    assert_eq!(r["bound"], 3);
    assert_eq!(r["dim"], 4);
}

#[test]
fn trace_is_written() {
    let file = std::env::temp_dir().join(format!("poissonlie-cli-trace-{}.json", std::process::id()));
    let (code, _) = run(&["decompose", &path("eng4.json"), "--trace", &file.to_string_lossy()]);
    assert_eq!(code, 0);
    let trace: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    std::fs::remove_file(&file).unwrap();
    let cases: Vec<&str> = trace.as_array().unwrap().iter().map(|s| s["case"].as_str().unwrap()).collect();
    assert!(cases.contains(&"pair"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["bvwg-simple", &path("bvwg-degenerate.json")]).0, 1);
    assert_eq!(run(&["bvwg-simple", &path("bvwg-weyl-g2.json")]).0, 0);
    let (code, r) = run(&["decompose", &path("aff2.json")]);
    assert_eq!(code, 1);
    assert_eq!(r["error"]["kind"], "hypothesis-failed");
    assert_eq!(run(&["bvwg-simple", &path("heisenberg.json")]).0, 2);
    assert_eq!(run(&["verify", &path("missing.json")]).0, 2);
    let (code, r) = run(&["decompose", &path("eng4.json"), "--max-degree", "0"]);
    assert_eq!(code, 3);
    assert_eq!(r["bound"], 0);
}

#[test]
fn rationals_are_strings() {
    let (code, r) = run(&["bvwg-embed", &path("bvwg-weyl-g2.json")]);
    assert_eq!(code, 0);
    assert!(r["x"][0].as_array().unwrap().iter().all(Value::is_string));
}
