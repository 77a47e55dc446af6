use poissonlie_wasm::{bracket, bvwg_explore, decompose, parse_response};

const HEIS: &str = include_str!("../../cli/fixtures/heisenberg.json");
const HEIS_Z1: &str = include_str!("../../cli/fixtures/heisenberg-z1.json");
const TORUS: &str = include_str!("../../cli/fixtures/bvwg-torus.json");
const DEGENERATE: &str = include_str!("../../cli/fixtures/bvwg-degenerate.json");

#[test]
fn bracket_in_heisenberg() {
    let r = parse_response(&bracket(HEIS, "x", "y"));
    assert_eq!(r["status"], 0);
    assert_eq!(r["report"]["bracket"], "z");
    let r = parse_response(&bracket(HEIS, "x", "w"));
    assert_eq!(r["status"], 2);
}

#[test]
fn explorer_reports_growth() {
    let r = parse_response(&bvwg_explore(TORUS));
    assert_eq!(r["status"], 0);
    assert_eq!(r["report"]["gk_total"], 2);
    assert_eq!(r["report"]["growth"]["counts"].as_array().unwrap().len(), 10);
    let r = parse_response(&bvwg_explore(DEGENERATE));
    assert_eq!(r["status"], 1);
    assert_eq!(r["report"]["error"], serde_json::Value::Null);
}

#[test]
fn decompose_quotient() {
    let r = parse_response(&decompose(HEIS_Z1, 4));
    assert_eq!(r["status"], 0);
    assert_eq!(r["report"]["pairs"], serde_json::json!([["x", "y"]]));
    let r = parse_response(&decompose("{", 4));
    assert_eq!(r["status"], 2);
}
