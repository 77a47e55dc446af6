#![allow(dead_code)]

use poissonlie::bvwg::BvwgSpec;
use poissonlie::lie::LieAlgebra;
use poissonlie::linalg::{Subspace, Vector};
use poissonlie::poisson::{Derivation, PoissonAlgebra, SubstitutionIdeal};
use poissonlie::rational::{int, rat};
use poissonlie::{Monomial, Poly, Rational, VarSpec};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(r: &mut impl Rng) -> Rational {
    let n = r.gen_range(-5i64..=5);
    let d = [1i64, 1, 1, 2, 3][r.gen_range(0..5)];
    rat(n, d)
}

/// Random polynomial in `vars`; exponents of invertible variables may be
/// negative.
pub fn random_poly(r: &mut impl Rng, vars: &[VarSpec], max_deg: i32, max_terms: usize) -> Poly {
    let mut p = Poly::zero();
    let terms = r.gen_range(0..=max_terms);
    for _ in 0..terms {
        let mut budget = r.gen_range(0..=max_deg);
        let mut pairs = Vec::new();
        for (i, v) in vars.iter().enumerate() {
            if budget == 0 {
                break;
            }
            let lo = if v.invertible { -budget } else { 0 };
            let e = r.gen_range(lo..=budget);
            budget -= e.abs();
            pairs.push((i, e));
        }
        pairs.shuffle(r);
        let m = Monomial::from_pairs(pairs);
        p.add_term(m, small_rational(r));
    }
    p
}

pub fn names(prefix: &str, n: usize) -> Vec<VarSpec> {
    (1..=n).map(|i| VarSpec::new(format!("{prefix}{i}"))).collect()
}

fn commutator(a: &[Rational], b: &[Rational], k: usize) -> Vector {
    let mut out = vec![int(0); k * k];
    for i in 0..k {
        for j in 0..k {
            let mut s = int(0);
            for l in 0..k {
                s += &a[i * k + l] * &b[l * k + j] - &b[i * k + l] * &a[l * k + j];
            }
            out[i * k + j] = s;
        }
    }
    out
}

/// Lie subalgebra of upper triangular `3 x 3` matrices generated by a few
/// random elements, with dimension between 1 and `max_dim`.
pub fn random_lie(r: &mut impl Rng, max_dim: usize) -> LieAlgebra {
    let k = 3;
    loop {
        let gens = r.gen_range(1..=3);
        let mut basis: Vec<Vector> = Vec::new();
        let mut space = Subspace::zero(k * k);
        for _ in 0..gens {
            let mut m = vec![int(0); k * k];
            for i in 0..k {
                for j in i..k {
                    if r.gen_bool(0.6) {
                        m[i * k + j] = int(r.gen_range(-2..=2));
                    }
                }
            }
            if !space.contains(&m) {
                space = space.sum(&Subspace::span(k * k, [m.clone()]));
                basis.push(m);
            }
        }
        let mut grew = true;
        while grew && basis.len() <= max_dim {
            grew = false;
            for a in 0..basis.len() {
                for b in a + 1..basis.len() {
                    let c = commutator(&basis[a], &basis[b], k);
                    if !space.contains(&c) {
                        space = space.sum(&Subspace::span(k * k, [c.clone()]));
                        basis.push(c);
                        grew = true;
                    }
                }
            }
        }
        if basis.is_empty() || basis.len() > max_dim {
            continue;
        }
        let n = basis.len();
        let coords = |v: &Vector| -> Vector {
            let rows: Vec<Vector> = (0..k * k).map(|i| basis.iter().map(|b| b[i].clone()).collect()).collect();
            poissonlie::linalg::solve(&rows, v).expect("closed under brackets")
        };
        let mut br = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                br.push(((a, b), coords(&commutator(&basis[a], &basis[b], k))));
            }
        }
        let names = (1..=n).map(|i| format!("e{i}")).collect();
        return LieAlgebra::new(names, br).expect("matrix commutators satisfy Jacobi");
    }
}

/// Random structure constants, usually violating Jacobi.
pub fn random_table(r: &mut impl Rng, n: usize) -> Vec<((usize, usize), Vector)> {
    let mut br = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if r.gen_bool(0.5) {
                br.push(((a, b), (0..n).map(|_| int(r.gen_range(-1..=1))).collect()));
            }
        }
    }
    br
}

pub fn random_bvwg(r: &mut impl Rng, max_n: usize, max_p: usize) -> BvwgSpec {
    let n = r.gen_range(0..=max_n);
    let p = r.gen_range(0..=max_p);
    let mut omega = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if r.gen_bool(0.4) {
                let c = r.gen_range(-2..=2);
                omega[i][j] = c;
                omega[j][i] = -c;
            }
        }
    }
    let weights: Vec<Vec<i64>> =
        (0..p).map(|_| (0..n).map(|_| if r.gen_bool(0.5) { r.gen_range(-2..=2) } else { 0 }).collect()).collect();
    BvwgSpec::from_ints(&omega, &weights).expect("valid shape")
}

pub fn random_simple_bvwg(r: &mut impl Rng, max_n: usize, max_p: usize) -> BvwgSpec {
    loop {
        let s = random_bvwg(r, max_n, max_p);
        if poissonlie::bvwg::is_simple(&s).simple {
            return s;
        }
    }
}

/// `B_2(Q[t])` on `X1, X2, Y1, Y2, t`.
pub fn b2t() -> (poissonlie::weyl::WeylPresentation, PoissonAlgebra) {
    let w = poissonlie::weyl::WeylPresentation::with_center(2, &["t"]);
    let a = w.build();
    (w, a)
}

/// `Q[α] ⊗ B_1` with `δ = ∂/∂α`.
pub fn alpha_b1() -> (PoissonAlgebra, Derivation) {
    let vars = vec![VarSpec::new("a"), VarSpec::new("X1"), VarSpec::new("Y1")];
    let a = PoissonAlgebra::from_strs(vars, &[("X1", "Y1", "1")]).unwrap();
    (a, Derivation::from_polys(vec![Poly::one(), Poly::zero(), Poly::zero()]))
}

pub fn z_to_one(g: &LieAlgebra) -> SubstitutionIdeal {
    let a = PoissonAlgebra::canonical_from_lie(g);
    SubstitutionIdeal::parse(&[("z", "1")], a.vars()).unwrap()
}

/// The decomposition fixtures: name, algebra, ideal.
pub fn decompose_fixtures() -> Vec<(String, LieAlgebra, SubstitutionIdeal)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        out.push((format!("abelian{n}"), LieAlgebra::abelian(n), SubstitutionIdeal::default()));
    }
    let h = LieAlgebra::heisenberg(1);
    out.push(("heisenberg".into(), h.clone(), SubstitutionIdeal::default()));
    out.push(("heisenberg-z1".into(), h.clone(), z_to_one(&h)));
    let h2 = LieAlgebra::heisenberg(2);
    out.push(("heisenberg2-z1".into(), h2.clone(), z_to_one(&h2)));
    out.push(("eng4".into(), LieAlgebra::eng4(), SubstitutionIdeal::default()));
    out
}
