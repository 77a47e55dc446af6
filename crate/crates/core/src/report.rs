//! JSON reports for each operation on a [`Problem`].

use std::fmt::Display;

use serde_json::{json, Value};

use crate::bvwg::{self, BvwgError, BvwgSpec};
use crate::decompose::{self, DecomposeError};
use crate::invariants::{self, SearchError};
use crate::lie::{LieAlgebra, LieError};
use crate::linalg::Vector;
use crate::poisson::{PoissonAlgebra, SubstitutionIdeal};
use crate::poly::{Poly, VarSpec};
use crate::problem::Problem;
use crate::rational::{format_rational, Rational};

/// How a run ended; `code` is the process exit code used by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Negative,
    Input,
    Exhausted,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Negative => 1,
            Status::Input => 2,
            Status::Exhausted => 3,
        }
    }
}

pub struct Outcome {
    pub status: Status,
    pub report: Value,
    pub summary: String,
    pub trace: Option<Value>,
}

impl Outcome {
    fn ok(report: Value, summary: impl Into<String>) -> Self {
        Outcome { status: Status::Ok, report, summary: summary.into(), trace: None }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub kind: &'static str,
    pub message: String,
    pub witness: Value,
}

impl Failure {
    pub fn input(message: impl Display) -> Self {
        Failure { status: Status::Input, kind: "input", message: message.to_string(), witness: Value::Null }
    }

    pub fn report(&self, bound: u32) -> Value {
        json!({ "bound": bound, "error": { "kind": self.kind, "message": self.message, "witness": self.witness } })
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        let kind = match e {
            SearchError::Lie(_) => "lie",
            SearchError::Poisson(_) => "poisson",
            SearchError::ComplementEliminated(_) => "complement-eliminated",
            SearchError::Unsupported => "unsupported",
            SearchError::PresentationMismatch(..) => "presentation-mismatch",
        };
        let witness = match &e {
            SearchError::ComplementEliminated(v) => json!(v),
            SearchError::PresentationMismatch(a, b) => json!([a, b]),
            _ => Value::Null,
        };
        Failure { status: Status::Input, kind, message: e.to_string(), witness }
    }
}

impl From<DecomposeError> for Failure {
    fn from(e: DecomposeError) -> Self {
        let message = e.to_string();
        match e {
            DecomposeError::Search(s) => s.into(),
            DecomposeError::HypothesisFailed { weight, witness } => Failure {
                status: Status::Negative,
                kind: "hypothesis-failed",
                message,
                witness: json!({ "weight": vector(&weight), "element": witness }),
            },
            DecomposeError::SearchExhausted(d) => {
                Failure { status: Status::Exhausted, kind: "search-exhausted", message, witness: json!(d) }
            }
            DecomposeError::NotNilpotent => {
                Failure { status: Status::Negative, kind: "not-nilpotent", message, witness: Value::Null }
            }
            DecomposeError::NotLocallyNilpotent(p) => {
                Failure { status: Status::Negative, kind: "not-locally-nilpotent", message, witness: json!(p) }
            }
            DecomposeError::Unsupported(w) => Failure { status: Status::Input, kind: "unsupported", message, witness: json!(w) },
            DecomposeError::EigenvalueNotRational => {
                Failure { status: Status::Input, kind: "eigenvalue-not-rational", message, witness: Value::Null }
            }
            DecomposeError::InvariantFailed(w) => {
                Failure { status: Status::Negative, kind: "invariant-failed", message, witness: json!(w) }
            }
            DecomposeError::Lie(_) | DecomposeError::Poisson(_) => {
                Failure { status: Status::Input, kind: "input", message, witness: Value::Null }
            }
        }
    }
}

impl From<BvwgError> for Failure {
    fn from(e: BvwgError) -> Self {
        let message = e.to_string();
        match e {
            BvwgError::NotSimple { certificate } => {
                Failure { status: Status::Negative, kind: "not-simple", message, witness: vectors(&certificate) }
            }
            BvwgError::ConditionFailed { condition, witness } => Failure {
                status: Status::Negative,
                kind: "condition-failed",
                message,
                witness: json!({ "condition": condition, "element": witness }),
            },
            _ => Failure::input(message),
        }
    }
}

fn vector(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|c| json!(format_rational(c))).collect())
}

fn vectors(vs: &[Vector]) -> Value {
    Value::Array(vs.iter().map(|v| vector(v)).collect())
}

fn polys(a: &PoissonAlgebra, ps: &[Poly]) -> Value {
    Value::Array(ps.iter().map(|p| json!(a.show(p))).collect())
}

fn table(a: &PoissonAlgebra) -> Value {
    Value::Array(a.named_table().into_iter().map(|((p, q), r)| json!([p, q, r])).collect())
}

fn rules(vars: &[VarSpec], q: &SubstitutionIdeal) -> Value {
    Value::Array(q.rules.iter().map(|(&v, p)| json!({ "var": vars[v].name, "value": p.to_string_with(vars) })).collect())
}

fn fixed(x: f64) -> String {
    format!("{x:.4}")
}

struct LieInput<'a> {
    g: &'a LieAlgebra,
    q: &'a SubstitutionIdeal,
}

fn lie_input(problem: &Problem) -> Result<LieInput<'_>, Failure> {
    match problem {
        Problem::Lie { g, ideal, .. } => {
            g.verify().map_err(|e| Failure {
                status: Status::Input,
                kind: "lie",
                message: e.to_string(),
                witness: Value::Null,
            })?;
            Ok(LieInput { g, q: ideal })
        }
        Problem::Bvwg { .. } => Err(Failure::input("this subcommand needs a `lie` problem")),
    }
}

fn bvwg_input(problem: &Problem) -> Result<&BvwgSpec, Failure> {
    match problem {
        Problem::Bvwg { spec, .. } => Ok(spec),
        Problem::Lie { .. } => Err(Failure::input("this subcommand needs a `bvwg` problem")),
    }
}

fn algebra(problem: &Problem) -> Result<PoissonAlgebra, Failure> {
    match problem {
        Problem::Lie { .. } => {
            let l = lie_input(problem)?;
            invariants::algebra_of(l.g, l.q).map_err(|e| Failure::input(e))
        }
        Problem::Bvwg { spec, .. } => Ok(bvwg::build(spec)),
    }
}

pub fn verify(problem: &Problem, d: u32) -> Result<Outcome, Failure> {
    match problem {
        Problem::Lie { g, ideal, .. } => {
            if let Err(e) = g.verify() {
                let witness = match &e {
                    LieError::JacobiViolation { i, j, k, residual } => {
                        json!({ "triple": [i, j, k], "residual": vector(residual) })
                    }
                    _ => Value::Null,
                };
                return Err(Failure { status: Status::Negative, kind: "jacobi", message: e.to_string(), witness });
            }
            let a = PoissonAlgebra::canonical_from_lie(g);
            let poisson_jacobi = a.jacobi_check().is_ok();
            let quotient = if ideal.rules.is_empty() { None } else { Some(a.quotient(ideal)) };
            let stable = quotient.as_ref().map(|r| r.is_ok());
            let mut report = json!({
                "bound": d,
                "dim": g.dim(),
                "jacobi": true,
                "poisson_jacobi": poisson_jacobi,
                "solvable": g.is_solvable(),
                "nilpotent": g.is_nilpotent(),
            });
            if let Some(Ok(b)) = &quotient {
                report["ideal_stable"] = json!(true);
                report["quotient_table"] = table(b);
            } else if let Some(Err(e)) = &quotient {
                report["ideal_stable"] = json!(false);
                report["ideal_error"] = json!(e.to_string());
            }
            let status = if poisson_jacobi && stable != Some(false) { Status::Ok } else { Status::Negative };
            let summary = format!("{}: solvable={} nilpotent={}", problem.name(), g.is_solvable(), g.is_nilpotent());
            Ok(Outcome { status, report, summary, trace: None })
        }
        Problem::Bvwg { spec, .. } => {
            let a = bvwg::build(spec);
            let jacobi = a.jacobi_check().is_ok();
            let simple = bvwg::is_simple(spec).simple;
            let report =
                json!({ "bound": d, "n": spec.n(), "p": spec.p(), "jacobi": jacobi, "simple": simple, "table": table(&a) });
            let status = if jacobi { Status::Ok } else { Status::Negative };
            Ok(Outcome { status, report, summary: format!("{}: jacobi={jacobi} simple={simple}", problem.name()), trace: None })
        }
    }
}

pub fn bracket(problem: &Problem, p: &str, q: &str, d: u32) -> Result<Outcome, Failure> {
    let a = algebra(problem)?;
    let pp = a.parse(p).map_err(Failure::input)?;
    let qq = a.parse(q).map_err(Failure::input)?;
    let r = a.show(&a.bracket_poly(&pp, &qq));
    let report = json!({ "bound": d, "p": a.show(&pp), "q": a.show(&qq), "bracket": r });
    Ok(Outcome::ok(report, format!("{{{p}, {q}}} = {r}")))
}

pub fn semi_invariants(problem: &Problem, d: u32) -> Result<Outcome, Failure> {
    let l = lie_input(problem)?;
    let a = algebra(problem)?;
    let rep = invariants::semi_invariants(l.g, l.q, d)?;
    let entries: Vec<Value> =
        rep.entries.iter().map(|(w, basis)| json!({ "weight": vector(w), "basis": polys(&a, basis) })).collect();
    let summary = format!("{} weights with nonzero semi-invariants up to degree {d}", entries.len());
    Ok(Outcome::ok(json!({ "bound": d, "weights": entries }), summary))
}

pub fn center(problem: &Problem, d: u32) -> Result<Outcome, Failure> {
    let a = algebra(problem)?;
    let c = invariants::center_up_to_degree(&a, d);
    let summary = format!("center has dimension {} up to degree {d}", c.len());
    Ok(Outcome::ok(json!({ "bound": d, "dim": c.len(), "basis": polys(&a, &c) }), summary))
}

pub fn ghat(problem: &Problem, d: u32) -> Result<Outcome, Failure> {
    let l = lie_input(problem)?;
    let pres = invariants::present_over_ghat(l.g, l.q, d)?;
    let gh = &pres.ghat;
    let names = l.g.names();
    let derivations: Vec<Value> = pres
        .derivations
        .iter()
        .zip(&gh.complement)
        .map(|(dv, &c)| {
            let images: Vec<Value> = dv.images.iter().map(|e| json!(pres.rebuilt.show_local(e))).collect();
            json!({ "variable": names[c], "images": images })
        })
        .collect();
    let report = json!({
        "bound": d,
        "dim": gh.subalgebra.dim(),
        "basis": vectors(gh.subalgebra.basis()),
        "complement": gh.complement.iter().map(|&c| names[c].clone()).collect::<Vec<_>>(),
        "weights": vectors(&gh.weights),
        "qhat": rules(pres.base.vars(), &gh.qhat),
        "base_table": table(&pres.base),
        "derivations": derivations,
        "rebuilt_table": table(&pres.rebuilt),
    });
    let summary = format!("ghat has dimension {} in a {}-dimensional algebra", gh.subalgebra.dim(), l.g.dim());
    Ok(Outcome::ok(report, summary))
}

pub fn decompose(problem: &Problem, d: u32, cap: u32) -> Result<Outcome, Failure> {
    let l = lie_input(problem)?;
    let r = decompose::decompose_with_cap(l.g, l.q, d, None, cap)?;
    r.verify(l.g)?;
    let book = r.bookkeeping(BOOKKEEPING_DEGREE);
    let pairs: Vec<Value> = r.pairs.iter().map(|(x, y)| json!([r.show(x), r.show(y)])).collect();
    let report = json!({
        "bound": d,
        "e": r.show(&r.e),
        "n": r.n(),
        "pairs": pairs,
        "center_generators": polys(&r.algebra, &r.center_generators),
        "center_basis": polys(&r.algebra, &r.center_basis),
        "hypothesis": r.hypothesis,
        "bookkeeping": {
            "bound": book.bound,
            "center_dim": book.center_dim,
            "weyl_dim": book.weyl_dim,
            "rank": book.rank,
            "missing": book.missing,
            "holds": book.holds(),
        },
    });
    let summary = format!("e = {}, n = {}, {} center generators", r.show(&r.e), r.n(), r.center_generators.len());
    let trace = serde_json::to_value(&r.trace).expect("trace serializes");
    let status = if book.holds() { Status::Ok } else { Status::Negative };
    Ok(Outcome { status, report, summary, trace: Some(trace) })
}

pub fn check84(problem: &Problem, d: u32) -> Result<Outcome, Failure> {
    let l = lie_input(problem)?;
    let c = decompose::check_84(l.g, l.q, d)?;
    let report = json!({
        "bound": c.bound,
        "center_trivial": c.center_trivial,
        "is_weyl": c.is_weyl,
        "weyl_rank": c.weyl_rank,
        "certificate": c.certificate,
        "agree": c.agree(),
    });
    let summary = format!("center trivial: {}, Weyl: {}", c.center_trivial, c.is_weyl);
    Ok(Outcome { status: if c.agree() { Status::Ok } else { Status::Negative }, report, summary, trace: None })
}

pub fn bvwg_simple(problem: &Problem, d: u32) -> Result<Outcome, Failure> {
    let spec = bvwg_input(problem)?;
    let s = bvwg::is_simple(spec);
    let report = json!({ "bound": d, "simple": s.simple, "certificate": vectors(&s.certificate) });
    let summary =
        if s.simple { "simple".to_string() } else { format!("not simple: {} invariant directions", s.certificate.len()) };
    Ok(Outcome { status: if s.simple { Status::Ok } else { Status::Negative }, report, summary, trace: None })
}

pub const GROWTH_DMAX: u32 = 40;
pub const BOOKKEEPING_DEGREE: u32 = 4;

pub fn bvwg_invariants(problem: &Problem, d: u32) -> Result<Outcome, Failure> {
    let spec = bvwg_input(problem)?;
    let inv = bvwg::invariants(spec);
    let simple = bvwg::is_simple(spec).simple;
    let sub = if simple { Some(bvwg::centralizer_center(spec)?) } else { None };
    let curve: Vec<Value> = (1..=GROWTH_DMAX / 4)
        .map(|k| {
            let dd = 4 * k;
            json!([dd, bvwg::monomial_count(spec.n(), spec.p(), dd) as u64])
        })
        .collect();
    let report = json!({
        "bound": d,
        "gk_total": inv.gk_total,
        "rank_g": inv.rank_g,
        "gk_centralizer": inv.gk_centralizer,
        "gk_center": inv.gk_center,
        "simple": simple,
        "centralizer_v_basis": sub.as_ref().map(|(c, _)| vectors(&c.v_basis)),
        "center_v_basis": sub.as_ref().map(|(_, z)| vectors(&z.v_basis)),
        "growth": {
            "dmax": GROWTH_DMAX,
            "exponent": fixed(bvwg::growth_exponent(spec, GROWTH_DMAX)),
            "group_exponent": fixed(bvwg::group_growth_exponent(spec, GROWTH_DMAX)),
            "counts": curve,
        },
    });
    let summary = format!("GK dimension {} (rank of G {})", inv.gk_total, inv.rank_g);
    Ok(Outcome::ok(report, summary))
}

pub fn bvwg_embed(problem: &Problem, d: u32) -> Result<Outcome, Failure> {
    let spec = bvwg_input(problem)?;
    let e = bvwg::embed_in_weyl(spec)?;
    let src = bvwg::build(spec);
    let images: Vec<Value> = src.vars().iter().zip(&e.hom.images).map(|(v, p)| json!([v.name, e.target.show(p)])).collect();
    let report = json!({
        "bound": d,
        "l": e.l,
        "m": e.m,
        "x": vectors(&e.basis.x),
        "y": vectors(&e.basis.y),
        "s": vectors(&e.basis.s),
        "target_table": table(&e.target),
        "images": images,
    });
    Ok(Outcome::ok(report, format!("embedded into B_{} tensor B'_{}", e.l, e.m)))
}

pub fn bvwg_realize(problem: &Problem, d: u32) -> Result<Outcome, Failure> {
    let spec = bvwg_input(problem)?;
    let r = bvwg::realize_from_lie(spec)?;
    r.verify(spec)?;
    let src = bvwg::build(spec);
    let lie_vars = PoissonAlgebra::canonical_from_lie(&r.lie);
    let forward: Vec<Value> = src.vars().iter().zip(&r.forward).map(|(v, p)| json!([v.name, r.target.show(p)])).collect();
    let backward: Vec<Value> = r.target.vars().iter().zip(&r.backward).map(|(v, p)| json!([v.name, src.show(p)])).collect();
    let report = json!({
        "bound": d,
        "lie_basis": r.lie.names(),
        "lie_table": table(&lie_vars),
        "ideal": rules(lie_vars.vars(), &r.ideal),
        "inverted": polys(&lie_vars, &r.semi_invariants),
        "target_table": table(&r.target),
        "forward": forward,
        "backward": backward,
        "verified": true,
    });
    Ok(Outcome::ok(report, format!("realized from a {}-dimensional Lie algebra", r.lie.dim())))
}
