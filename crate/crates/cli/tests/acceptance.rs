#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use poissonlie::bvwg::{self, BvwgSpec};
use poissonlie::decompose::{check_84, decompose};
use poissonlie::invariants::semi_invariants;
use poissonlie::lie::{in_nat_span, LieAlgebra};
use poissonlie::linalg::Vector;
use poissonlie::poisson::{Derivation, LocalElement, PoissonAlgebra, SubstitutionIdeal};
use poissonlie::rational::int;
use poissonlie::weyl::{ChiContext, DEFAULT_NILPOTENCY_CAP};
use poissonlie::Poly;
use rand::Rng;

const AXIOM_POLYS: usize = 1000;
const AXIOM_LIE: usize = 100;
const PARTIAL_ELEMENTS: usize = 500;
const CHI_ELEMENTS: usize = 200;
const SPLIT_DERIVATIONS: usize = 50;
const SIMPLICITY_SPECS: usize = 50;
const SEARCH_DEGREE: u32 = 6;
const GROWTH_DMAX: u32 = 40;
const GROWTH_TOLERANCE: f64 = 0.2;
const REALIZED_SPECS: usize = 10;
const DECOMPOSE_DEGREE: u32 = 6;
const BOOKKEEPING_DEGREE: u32 = 4;
const CHECK84_DEGREE: u32 = 6;
const WEIGHT_DEGREE: u32 = 6;
const DETERMINISM_RUNS: usize = 3;

fn bracket_axioms(a: &PoissonAlgebra, p: &Poly, q: &Poly, s: &Poly) {
    let br = |u: &Poly, v: &Poly| a.bracket_poly(u, v);
    assert_eq!(p + q, q + p);
    assert_eq!(p * q, q * p);
    assert_eq!(&(p * q) * s, p * &(q * s));
    assert_eq!(p * &(q + s), &(p * q) + &(p * s));
    assert!(br(p, p).is_zero());
    assert_eq!(br(p, q), -br(q, p));
    assert_eq!(br(p, &(q * s)), &(&br(p, q) * s) + &(q * &br(p, s)));
    let jac = &(&br(p, &br(q, s)) + &br(q, &br(s, p))) + &br(s, &br(p, q));
    assert!(jac.is_zero());
}

fn axiom_suite() {
    let mut r = common::rng(101);
    let algebras: Vec<PoissonAlgebra> = (0..AXIOM_LIE)
        .map(|_| {
            let g = common::random_lie(&mut r, 5);
            assert!(g.verify().is_ok());
            let a = PoissonAlgebra::canonical_from_lie(&g);
            assert!(a.jacobi_check().is_ok());
            a
        })
        .collect();
    let mut count = 0;
    for k in 0..AXIOM_POLYS.div_ceil(3) {
        let a = &algebras[k % algebras.len()];
        let vars = a.vars().to_vec();
        let p = common::random_poly(&mut r, &vars, 3, 4);
        let q = common::random_poly(&mut r, &vars, 3, 4);
        let s = common::random_poly(&mut r, &vars, 2, 3);
        bracket_axioms(a, &p, &q, &s);
        count += 3;
    }
    assert!(count >= AXIOM_POLYS);
    let mut broken = 0;
    for k in 0..AXIOM_LIE {
        let n = 3 + k % 3;
        let names: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
        let g = LieAlgebra::unchecked(names, common::random_table(&mut r, n)).unwrap();
        let ok = g.verify().is_ok();
        assert_eq!(ok, PoissonAlgebra::canonical_from_lie(&g).jacobi_check().is_ok());
        broken += usize::from(!ok);
    }
    assert!(broken > 0 && broken < AXIOM_LIE);
}

fn heisenberg_quotient() {
    let g = LieAlgebra::heisenberg(1);
    let q = PoissonAlgebra::canonical_from_lie(&g).quotient(&common::z_to_one(&g)).unwrap();
    let b1 =
        BvwgSpec::new(vec!["x".into(), "y".into()], vec![vec![int(0), int(1)], vec![int(-1), int(0)]], vec![], vec![]).unwrap();
    assert_eq!(q.named_table(), bvwg::build(&b1).named_table());
    assert_eq!(q.named_table().len(), 1);
    assert_eq!(q.named_table()[&("x".to_string(), "y".to_string())], "1");
}

fn partial_formula() {
    let (w, a) = common::b2t();
    let mut r = common::rng(103);
    for _ in 0..PARTIAL_ELEMENTS {
        let p = common::random_poly(&mut r, a.vars(), 5, 6);
        for i in 0..2 {
            let (bx, by) = w.bracket_via_partials(&p, i);
            assert_eq!(bx, a.bracket_poly(&Poly::var(w.x(i)), &p));
            assert_eq!(by, a.bracket_poly(&Poly::var(w.y(i)), &p));
        }
    }
}

fn chi_theta() {
    let (a, d) = common::alpha_b1();
    let ctx = ChiContext::new(a.clone(), d, &Poly::var(0), DEFAULT_NILPOTENCY_CAP).unwrap();
    let mut r = common::rng(104);
    for _ in 0..CHI_ELEMENTS {
        let p = common::random_poly(&mut r, a.vars(), 5, 5);
        assert_eq!(ctx.theta(&ctx.chi(&p).unwrap()).unwrap(), p);
        let t = ctx.target.nf(&common::random_poly(&mut r, ctx.target.vars(), 5, 5));
        assert_eq!(ctx.chi(&ctx.theta(&t).unwrap()).unwrap(), t);
        let q = common::random_poly(&mut r, a.vars(), 4, 4);
        let lhs = ctx.chi(&a.bracket_poly(&p, &q)).unwrap();
        let rhs = ctx.target.bracket_poly(&ctx.chi(&p).unwrap(), &ctx.chi(&q).unwrap());
        assert_eq!(lhs, rhs);
    }
}

fn split_derivations() {
    let (w, a) = common::b2t();
    let mut r = common::rng(105);
    let pair_vars: Vec<_> = a.vars()[..4].to_vec();
    for _ in 0..SPLIT_DERIVATIONS {
        let secret = common::random_poly(&mut r, &pair_vars, 4, 5);
        let mut images: Vec<Poly> = a.inner_derivation(&LocalElement::poly(secret.clone())).poly_images().unwrap();
        images[4] = &images[4] + &Poly::var(4).pow(r.gen_range(0..3)).scale(&common::small_rational(&mut r));
        let (b, rest) = w.split_derivation(&Derivation::from_polys(images)).unwrap();
        for v in 0..4 {
            assert_eq!(a.bracket_poly(&b, &Poly::var(v)), a.bracket_poly(&secret, &Poly::var(v)));
        }
        assert!(rest.poly_images().unwrap()[..4].iter().all(Poly::is_zero));
    }
}

fn simplicity_equivalence() {
    let mut r = common::rng(106);
    let mut negatives = 0;
    for _ in 0..SIMPLICITY_SPECS {
        let s = common::random_bvwg(&mut r, 3, 2);
        let simple = bvwg::is_simple(&s).simple;
        assert_eq!(simple, bvwg::fixed_ring_search(&s, SEARCH_DEGREE).is_none(), "{s:?}");
        assert_eq!(simple, bvwg::stable_ideal_search(&s, SEARCH_DEGREE).is_none(), "{s:?}");
        negatives += usize::from(!simple);
    }
    assert!(negatives > 0 && negatives < SIMPLICITY_SPECS);
}

fn curated_growth_specs() -> Vec<BvwgSpec> {
    let sym = vec![vec![0, 1], vec![-1, 0]];
    [
        (vec![vec![0]], vec![vec![1]]),
        (sym.clone(), vec![]),
        (sym.clone(), vec![vec![1, 0]]),
        (vec![vec![0, 0], vec![0, 0]], vec![vec![1, 0], vec![0, 1]]),
        (sym, vec![vec![1, 0], vec![0, 1]]),
    ]
    .into_iter()
    .map(|(o, w)| BvwgSpec::from_ints(&o, &w).unwrap())
    .collect()
}

fn growth() {
    for s in curated_growth_specs() {
        assert!(bvwg::is_simple(&s).simple);
        let total = (s.n() + s.p()) as f64;
        let e = bvwg::growth_exponent(&s, GROWTH_DMAX);
        assert!((e - total).abs() < GROWTH_TOLERANCE, "exponent {e} against {total}");
        let ge = bvwg::group_growth_exponent(&s, GROWTH_DMAX);
        assert!((ge - s.p() as f64).abs() < GROWTH_TOLERANCE, "group exponent {ge} against {}", s.p());
    }
}

fn realizations() {
    let mut r = common::rng(108);
    for _ in 0..REALIZED_SPECS {
        let s = common::random_simple_bvwg(&mut r, 3, 2);
        let real = bvwg::realize_from_lie(&s).unwrap();
        real.verify(&s).unwrap();
        let a = bvwg::build(&s);
        for i in 0..a.nvars() {
            for j in 0..a.nvars() {
                let image =
                    real.target.nf(&a.bracket_poly(&Poly::var(i), &Poly::var(j)).compose(&real.forward, real.target.vars()));
                assert_eq!(image, real.target.bracket_poly(&real.forward[i], &real.forward[j]));
            }
        }
    }
}

fn flagship() {
    for (name, g, q) in common::decompose_fixtures() {
        let res = decompose(&g, &q, DECOMPOSE_DEGREE, None).unwrap_or_else(|e| panic!("{name}: {e}"));
        res.verify(&g).unwrap();
        let book = res.bookkeeping(BOOKKEEPING_DEGREE);
        assert!(book.holds(), "{name}: {book:?}");
    }
}

fn check84() {
    let mut negative = false;
    for (name, g, q) in common::decompose_fixtures() {
        let c = check_84(&g, &q, CHECK84_DEGREE).unwrap();
        assert!(c.agree(), "{name}");
        negative |= name == "heisenberg" && !c.center_trivial && !c.is_weyl;
    }
    assert!(negative);
}

fn weight_containment() {
    let mut all: Vec<(LieAlgebra, SubstitutionIdeal)> =
        common::decompose_fixtures().into_iter().map(|(_, g, q)| (g, q)).collect();
    all.push((LieAlgebra::aff2(), SubstitutionIdeal::default()));
    for (g, q) in all {
        let jh = g.jordan_holder().unwrap();
        let weights: Vec<Vector> = semi_invariants(&g, &q, WEIGHT_DEGREE).unwrap().weights();
        for w in weights {
            assert!(in_nat_span(&w, &jh.weights, WEIGHT_DEGREE as usize));
        }
    }
}

const SUBCOMMANDS: &[&str] = &[
    "verify",
    "bracket",
    "semi-invariants",
    "center",
    "ghat",
    "decompose",
    "check84",
    "bvwg-simple",
    "bvwg-invariants",
    "bvwg-embed",
    "bvwg-realize",
];

fn fixture_files() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files
}

fn first_generator(file: &Path) -> String {
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(file).unwrap()).unwrap();
    let names = v.pointer("/lie/basis").or_else(|| v.pointer("/bvwg/v_names")).unwrap();
    names.as_array().and_then(|a| a.first()).and_then(|s| s.as_str()).unwrap_or("1").to_string()
}

fn run_cli(sub: &str, file: &Path, trace: &Path) -> (Option<i32>, Vec<u8>, Vec<u8>) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_poissonlie"));
    cmd.arg(sub).arg(file).arg("--json").arg("--trace").arg(trace);
    if sub == "bracket" {
        let x = first_generator(file);
        cmd.args(["-p", &format!("{x}^2 + 1"), "-q", &format!("{x}")]);
    }
    let out = cmd.output().unwrap();
    let trace_bytes = std::fs::read(trace).unwrap_or_default();
    let _ = std::fs::remove_file(trace);
    (out.status.code(), out.stdout, trace_bytes)
}

fn determinism() {
    let trace = std::env::temp_dir().join(format!("poissonlie-trace-{}.json", std::process::id()));
    for file in fixture_files() {
        for sub in SUBCOMMANDS {
            let first = run_cli(sub, &file, &trace);
            assert!(first.0.is_some_and(|c| (0..=3).contains(&c)), "{sub} {}", file.display());
            assert!(!first.1.is_empty());
            for _ in 1..DETERMINISM_RUNS {
                assert_eq!(run_cli(sub, &file, &trace), first, "{sub} {}", file.display());
            }
        }
    }
}

#[test]
fn acceptance() {
    let criteria: [(&str, Duration, fn()); 12] = [
        ("axiom suite", Duration::from_secs(30), axiom_suite),
        ("heisenberg quotient is B1", Duration::from_secs(1), heisenberg_quotient),
        ("partial derivative bracket formula", Duration::from_secs(10), partial_formula),
        ("chi and theta roundtrips", Duration::from_secs(20), chi_theta),
        ("derivation splitting", Duration::from_secs(20), split_derivations),
        ("simplicity criteria agree", Duration::from_secs(60), simplicity_equivalence),
        ("growth exponents", Duration::from_secs(30), growth),
        ("realization roundtrips", Duration::from_secs(30), realizations),
        ("decomposition fixtures", Duration::from_secs(120), flagship),
        ("center triviality versus Weyl shape", Duration::from_secs(30), check84),
        ("weights in the Jordan-Holder cone", Duration::from_secs(10), weight_containment),
        ("CLI determinism", Duration::from_secs(600), determinism),
    ];
    let mut failed = Vec::new();
    for (k, (name, limit, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f));
        let took = start.elapsed();
        let pass = outcome.is_ok() && took <= limit;
        let note = match (&outcome, took <= limit) {
            (Err(_), _) => " (assertion failed)".to_string(),
            (Ok(()), false) => format!(" (over the {:.0}s limit)", limit.as_secs_f64()),
            _ => String::new(),
        };
        let line =
            format!("criterion {:>2} {} {name} [{:.2}s]{note}", k + 1, if pass { "PASS" } else { "FAIL" }, took.as_secs_f64());
        writeln!(std::io::stderr(), "{line}").unwrap();
        if !pass {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
