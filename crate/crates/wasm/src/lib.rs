//! Entry points for the static demo page. Every function takes the problem
//! file as JSON text and returns `{"status": code, "report": ...}`.

use poissonlie::problem::Problem;
use poissonlie::report::{self, Failure, Outcome};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const DEFAULT_DEGREE: u32 = 6;

fn respond(result: Result<Outcome, Failure>, d: u32) -> String {
    let v = match result {
        Ok(out) => json!({ "status": out.status.code(), "report": out.report, "summary": out.summary }),
        Err(f) => json!({ "status": f.status.code(), "report": f.report(d), "summary": f.message }),
    };
    v.to_string()
}

fn with_problem(text: &str, d: u32, f: impl FnOnce(&Problem, u32) -> Result<Outcome, Failure>) -> String {
    match Problem::from_json(text) {
        Ok(p) => respond(f(&p, d), d),
        Err(e) => respond(Err(Failure::input(e)), d),
    }
}

/// `{p, q}` in the algebra described by `problem`.
#[wasm_bindgen]
pub fn bracket(problem: &str, p: &str, q: &str) -> String {
    with_problem(problem, DEFAULT_DEGREE, |pr, d| report::bracket(pr, p, q, d))
}

/// Simplicity, invariants and the monomial growth curve of a `bvwg` spec.
#[wasm_bindgen]
pub fn bvwg_explore(problem: &str) -> String {
    with_problem(problem, DEFAULT_DEGREE, |pr, d| {
        let simple = report::bvwg_simple(pr, d)?;
        let mut inv = report::bvwg_invariants(pr, d)?;
        inv.report["certificate"] = simple.report["certificate"].clone();
        inv.summary = format!("{}; {}", simple.summary, inv.summary);
        inv.status = simple.status;
        Ok(inv)
    })
}

/// Weyl-factor decomposition with degree bound `max_degree`.
#[wasm_bindgen]
pub fn decompose(problem: &str, max_degree: u32) -> String {
    with_problem(problem, max_degree, |pr, d| report::decompose(pr, d, pr.options().nilpotency_cap))
}

/// Parses a response produced by one of the entry points.
pub fn parse_response(text: &str) -> Value {
    serde_json::from_str(text).expect("responses are JSON")
}
