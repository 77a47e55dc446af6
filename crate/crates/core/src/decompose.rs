//! Splitting `B(Q, g)_e` as `Y(Q, g)_e ⊗ B_n` along a chain of ideals of
//! codimension one.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::invariants::{algebra_of, center_up_to_degree, semi_invariants, SearchError};
use crate::lie::{common_eigenvector_of, LieAlgebra, LieError, Weight};
use crate::linalg::{Matrix, Subspace};
use crate::poisson::{linear_form, PoissonAlgebra, PoissonError, SubstitutionIdeal};
use crate::poly::{Monomial, Poly};
use crate::rational::{factorial, Rational};
use crate::span::{self, Reducer};
use crate::weyl::DEFAULT_NILPOTENCY_CAP;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Poisson(#[from] PoissonError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("semi-invariant `{witness}` has nonzero weight")]
    HypothesisFailed { weight: Weight, witness: String },
    #[error("no suitable element found up to degree {0}")]
    SearchExhausted(u32),
    #[error("an operator has eigenvalues outside Q")]
    EigenvalueNotRational,
    #[error("algebra is not nilpotent")]
    NotNilpotent,
    #[error("derivation is not nilpotent on `{0}` within the cap")]
    NotLocallyNilpotent(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("result check failed: {0}")]
    InvariantFailed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub generator: String,
    /// `eliminated`, `central` or `pair`.
    pub case: &'static str,
    pub b: String,
    pub u: Option<String>,
    pub v: Option<String>,
}

#[derive(Debug, Clone)]
pub struct DecompositionResult {
    /// `B(Q, g)` with the factors of `e` made invertible.
    pub algebra: PoissonAlgebra,
    pub e: Poly,
    pub pairs: Vec<(Poly, Poly)>,
    pub center_generators: Vec<Poly>,
    /// Spanning products of the center generators up to `bound`, reduced.
    pub center_basis: Vec<Poly>,
    pub bound: u32,
    pub hypothesis: String,
    pub trace: Vec<TraceStep>,
}

impl DecompositionResult {
    pub fn n(&self) -> usize {
        self.pairs.len()
    }

    pub fn show(&self, p: &Poly) -> String {
        self.algebra.show(p)
    }

    /// Exact `B_n` relations, centrality of the center basis against the
    /// pairs and every generator, and the weight property of `e`.
    pub fn verify(&self, g: &LieAlgebra) -> Result<(), DecomposeError> {
        let a = &self.algebra;
        let fail = |m: String| Err(DecomposeError::InvariantFailed(m));
        for (i, (xi, yi)) in self.pairs.iter().enumerate() {
            for (j, (xj, yj)) in self.pairs.iter().enumerate() {
                let expect = if i == j { Poly::one() } else { Poly::zero() };
                if a.bracket_poly(xi, yj) != expect {
                    return fail(format!("{{x{}, y{}}}", i + 1, j + 1));
                }
                if !a.bracket_poly(xi, xj).is_zero() || !a.bracket_poly(yi, yj).is_zero() {
                    return fail(format!("pairs {} and {} do not commute", i + 1, j + 1));
                }
            }
        }
        let gens: Vec<Poly> = a.generators().into_iter().map(Poly::var).collect();
        let flat: Vec<&Poly> = self.pairs.iter().flat_map(|(x, y)| [x, y]).collect();
        for c in &self.center_basis {
            for p in flat.iter().copied().chain(&gens) {
                if !a.bracket_poly(c, p).is_zero() {
                    return fail(format!("`{}` is not central", a.show(c)));
                }
            }
        }
        if weight_of(a, g, &self.e).is_none() {
            return fail(format!("`{}` is not a weight vector", a.show(&self.e)));
        }
        Ok(())
    }

    /// Every pair element is a weight vector for `s`.
    pub fn verify_weights(&self, s: &Subspace) -> Result<(), DecomposeError> {
        for (x, y) in &self.pairs {
            for p in [x, y] {
                for t in s.basis() {
                    let b = self.algebra.bracket_poly(&linear_form(t), p);
                    if proportionality(&b, p).is_none() {
                        return Err(DecomposeError::InvariantFailed(format!("`{}` is not an s-weight vector", self.show(p))));
                    }
                }
            }
        }
        Ok(())
    }

    /// Products of the center basis (up to `d`) with pair monomials of
    /// degree at most `d`, compared against `B(Q)_e`.
    pub fn bookkeeping(&self, d: u32) -> Bookkeeping {
        let a = &self.algebra;
        let center = span::reduced_basis(&products_up_to(a, &self.center_generators, d));
        let flat: Vec<Poly> = self.pairs.iter().flat_map(|(x, y)| [x.clone(), y.clone()]).collect();
        let weyl = products_up_to(a, &flat, d);
        let mut products = Vec::new();
        for c in &center {
            for w in &weyl {
                products.push(a.nf(&(c * w)));
            }
        }
        let rank = span::span_rank(&products);
        let mut targets: Vec<Poly> = Vec::new();
        for v in a.generators() {
            targets.push(Poly::var(v));
            if a.vars()[v].invertible {
                targets.push(Poly::term(Monomial::var_pow(v, -1), Rational::one()));
            }
        }
        let span_all = Reducer::new(&products);
        let missing = targets.iter().filter(|t| !span_all.contains(t)).map(|t| a.show(t)).collect();
        Bookkeeping { bound: d, center_dim: center.len(), weyl_dim: weyl.len(), rank, missing }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bookkeeping {
    pub bound: u32,
    pub center_dim: usize,
    pub weyl_dim: usize,
    /// Rank of the products; equal to `center_dim * weyl_dim` when the
    /// multiplication map is injective on the slice.
    pub rank: usize,
    /// Generators of `B(Q)_e` outside the span of the products.
    pub missing: Vec<String>,
}

impl Bookkeeping {
    pub fn holds(&self) -> bool {
        self.rank == self.center_dim * self.weyl_dim && self.missing.is_empty()
    }
}

fn products_up_to(a: &PoissonAlgebra, gens: &[Poly], d: u32) -> Vec<Poly> {
    let idx: Vec<usize> = (0..gens.len()).collect();
    PoissonAlgebra::monomials_up_to(&idx, d)
        .iter()
        .map(|m| a.nf(&Poly::term(m.clone(), Rational::one()).compose(gens, a.vars())))
        .collect()
}

/// `c` with `q = c p`, when it exists.
fn proportionality(q: &Poly, p: &Poly) -> Option<Rational> {
    if q.is_zero() {
        return Some(Rational::zero());
    }
    let (m, c) = p.leading_term()?;
    let ratio = q.coeff(m) / c;
    (p.scale(&ratio) == *q).then_some(ratio)
}

fn weight_of(a: &PoissonAlgebra, g: &LieAlgebra, p: &Poly) -> Option<Weight> {
    (0..g.dim()).map(|i| proportionality(&a.bracket_poly(&Poly::var(i), p), p)).collect()
}

/// Laurent monomials in `vars` with `Σ |e_v| ≤ d`, negative exponents only
/// on invertible variables.
fn laurent_slice(a: &PoissonAlgebra, vars: &[usize], d: u32) -> Vec<Poly> {
    fn go(a: &PoissonAlgebra, vars: &[usize], left: i32, acc: Monomial, out: &mut Vec<Poly>) {
        let Some((&v, rest)) = vars.split_first() else {
            out.push(Poly::term(acc, Rational::one()));
            return;
        };
        let lo = if a.vars()[v].invertible { -left } else { 0 };
        for e in lo..=left {
            go(a, rest, left - e.abs(), acc.mul(&Monomial::var_pow(v, e)), out);
        }
    }
    let mut out = Vec::new();
    go(a, vars, d as i32, Monomial::one(), &mut out);
    out
}

/// Multiplies a non-monomial by the smallest monomial clearing negative
/// exponents, then makes the result monic.
fn clear_denominators(p: &Poly) -> Poly {
    if p.num_terms() == 1 {
        return p.monic();
    }
    let mut lows: Vec<(usize, i32)> = Vec::new();
    for (m, _) in p.terms() {
        for &(v, e) in m.pairs() {
            if e < 0 {
                match lows.iter_mut().find(|(w, _)| *w == v) {
                    Some(slot) => slot.1 = slot.1.max(-e),
                    None => lows.push((v, -e)),
                }
            }
        }
    }
    lows.sort();
    p.mul_monomial(&Monomial::from_pairs(lows)).monic()
}

struct State<'a> {
    g: &'a LieAlgebra,
    alg: PoissonAlgebra,
    d: u32,
    cap: u32,
    pairs: Vec<(Poly, Poly)>,
    center: Vec<Poly>,
    e: Poly,
    trace: Vec<TraceStep>,
}

impl State<'_> {
    fn step(&mut self, x: usize, avail: &[usize]) -> Result<(), DecomposeError> {
        let name = self.alg.vars()[x].name.clone();
        let xp = Poly::var(x);
        let slice = products_up_to(&self.alg, &self.center, self.d);
        let b = if self.pairs.is_empty() {
            Poly::zero()
        } else {
            let flat: Vec<Poly> = self.pairs.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
            let targets: Vec<Poly> = flat.iter().map(|p| self.alg.bracket_poly(&xp, p)).collect();
            let domain = laurent_slice(&self.alg, avail, self.d);
            let alg = &self.alg;
            let maps = |m: &Poly| flat.iter().map(|p| alg.bracket_poly(m, p)).collect();
            let b = span::preimage_in(&domain, &maps, &targets).ok_or(DecomposeError::SearchExhausted(self.d))?;
            Reducer::new(&slice).reduce(&b)
        };
        let xprime = &xp - &b;
        let delta = |p: &Poly| self.alg.bracket_poly(&xprime, p);
        for (a, c) in &self.pairs {
            if !delta(a).is_zero() || !delta(c).is_zero() {
                return Err(DecomposeError::InvariantFailed(format!("corrected `{name}` does not commute with the pairs")));
            }
        }
        let bs = self.alg.show(&b);
        if self.center.iter().all(|c| delta(c).is_zero()) {
            self.center.push(xprime);
            self.trace.push(TraceStep { generator: name, case: "central", b: bs, u: None, v: None });
            return Ok(());
        }
        let images = span::reduced_basis(&slice.iter().map(&delta).collect::<Vec<_>>());
        let mut w = span::kernel_in(&images, &|p: &Poly| vec![delta(p)]);
        let acting: Vec<Poly> = (0..self.g.dim()).map(Poly::var).collect();
        loop {
            let r = Reducer::new(&w);
            let next = span::kernel_in(&w, &|p: &Poly| acting.iter().map(|t| r.reduce(&self.alg.bracket_poly(t, p))).collect());
            if next.len() == w.len() {
                break;
            }
            w = next;
        }
        if w.is_empty() {
            return Err(DecomposeError::SearchExhausted(self.d));
        }
        let v = match w.iter().find(|p| weight_of(&self.alg, self.g, p).is_some()) {
            Some(p) => p.clone(),
            None => {
                let r = Reducer::new(&w);
                let ops: Vec<Matrix> = acting
                    .iter()
                    .map(|t| {
                        let cols: Vec<_> = w.iter().map(|p| r.coords(&self.alg.bracket_poly(t, p))).collect();
                        Matrix::from_columns(&cols, w.len())
                    })
                    .collect();
                let (_, c) = common_eigenvector_of(&ops, w.len()).map_err(|e| match e {
                    LieError::EigenvalueNotRational => DecomposeError::EigenvalueNotRational,
                    _ => DecomposeError::SearchExhausted(self.d),
                })?;
                w.iter().zip(&c).map(|(p, k)| p.scale(k)).sum::<Poly>().monic()
            }
        };
        let weight = weight_of(&self.alg, self.g, &v).expect("weight vector");
        if weight.iter().any(|c| !c.is_zero()) {
            return Err(DecomposeError::HypothesisFailed { weight, witness: self.alg.show(&v) });
        }
        let u = span::preimage_in(&slice, &|p: &Poly| vec![delta(p)], std::slice::from_ref(&v))
            .ok_or(DecomposeError::SearchExhausted(self.d))?;
        let fixed = span::kernel_in(&slice, &|p: &Poly| vec![delta(p)]);
        let u = Reducer::new(&fixed).reduce(&u);
        let vinv = if v.is_constant() {
            Poly::constant(v.as_constant().expect("constant").recip())
        } else {
            let (m, _) = v.leading_term().expect("nonzero");
            if v.num_terms() != 1 {
                return Err(DecomposeError::Unsupported(format!("non-monomial denominator `{}`", self.alg.show(&v))));
            }
            let positive = Monomial::from_pairs(m.pairs().iter().copied().filter(|&(_, e)| e > 0));
            self.alg = self.alg.localize(&[Poly::term(positive, Rational::one())])?;
            self.e = &self.e * &v;
            v.unit_inverse(self.alg.vars()).expect("unit after localization")
        };
        let y = self.alg.nf(&(&u * &vinv));
        if !self.alg.bracket_poly(&xprime, &y).is_one() {
            return Err(DecomposeError::InvariantFailed(format!("new pair for `{name}` is not canonical")));
        }
        let mut center: Vec<Poly> = Vec::new();
        let olds: Vec<Poly> = self.center.iter().cloned().chain((!v.is_constant()).then(|| vinv.clone())).collect();
        for c in olds {
            let t = self.theta(&c, &y, &xprime)?;
            if !t.is_constant() {
                let t = clear_denominators(&t);
                if !center.contains(&t) {
                    center.push(t);
                }
            }
        }
        let vs = self.alg.show(&v);
        self.trace.push(TraceStep { generator: name, case: "pair", b: bs, u: Some(self.alg.show(&u)), v: Some(vs) });
        self.pairs.push((xprime, y));
        self.center = center;
        Ok(())
    }

    /// `Σ (−1)^m/m! δ^m(c) y^m` with `δ = {x', ·}`.
    fn theta(&self, c: &Poly, y: &Poly, xprime: &Poly) -> Result<Poly, DecomposeError> {
        let mut out = Poly::zero();
        let mut cur = c.clone();
        let mut ypow = Poly::one();
        let mut m: u32 = 0;
        while !cur.is_zero() {
            if m > self.cap {
                return Err(DecomposeError::NotLocallyNilpotent(self.alg.show(c)));
            }
            let sign = if m % 2 == 0 { 1 } else { -1 };
            let coef = Rational::new(BigInt::from(sign), factorial(m));
            out += &(&cur * &ypow).scale(&coef);
            cur = self.alg.bracket_poly(xprime, &cur);
            ypow = &ypow * y;
            m += 1;
        }
        Ok(self.alg.nf(&out))
    }
}

/// Variables along the Jordan–Hölder chain, innermost first.
fn chain_order(g: &LieAlgebra) -> Result<Vec<usize>, DecomposeError> {
    let jh = g.jordan_holder()?;
    jh.generators
        .iter()
        .map(|v| {
            let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
            match nz.as_slice() {
                [i] => Ok(*i),
                _ => Err(DecomposeError::Unsupported("the ideal chain is not spanned by basis vectors".into())),
            }
        })
        .collect()
}

fn run(
    g: &LieAlgebra,
    q: &SubstitutionIdeal,
    d: u32,
    cap: u32,
    hypothesis: String,
) -> Result<DecompositionResult, DecomposeError> {
    let alg = algebra_of(g, q)?;
    let order = chain_order(g)?;
    for (pos, &x) in order.iter().enumerate() {
        if let Some(f) = q.rules.get(&x) {
            let earlier: BTreeSet<usize> = order[..pos].iter().copied().collect();
            if !f.vars().is_subset(&earlier) {
                return Err(DecomposeError::Unsupported(format!(
                    "rule for `{}` is not triangular along the chain",
                    alg.vars()[x].name
                )));
            }
        }
    }
    let mut st = State { g, alg, d, cap, pairs: Vec::new(), center: Vec::new(), e: Poly::one(), trace: Vec::new() };
    let mut avail = Vec::new();
    for &x in &order {
        if q.eliminates(x) {
            let name = st.alg.vars()[x].name.clone();
            st.trace.push(TraceStep { generator: name, case: "eliminated", b: "0".into(), u: None, v: None });
            continue;
        }
        avail.push(x);
        st.step(x, &avail[..avail.len() - 1])?;
    }
    let center_generators: Vec<Poly> = st.center.iter().map(clear_denominators).collect();
    let center_basis = span::reduced_basis(&products_up_to(&st.alg, &center_generators, d));
    let out = DecompositionResult {
        algebra: st.alg,
        e: st.e,
        pairs: st.pairs,
        center_generators,
        center_basis,
        bound: d,
        hypothesis,
        trace: st.trace,
    };
    out.verify(g)?;
    Ok(out)
}

/// Requires every semi-invariant of degree at most `d` to have weight zero.
pub fn decompose(
    g: &LieAlgebra,
    q: &SubstitutionIdeal,
    d: u32,
    s: Option<&Subspace>,
) -> Result<DecompositionResult, DecomposeError> {
    decompose_with_cap(g, q, d, s, DEFAULT_NILPOTENCY_CAP)
}

/// As [`decompose`], with `cap` bounding the powers of a derivation tried
/// before it is declared not locally nilpotent.
pub fn decompose_with_cap(
    g: &LieAlgebra,
    q: &SubstitutionIdeal,
    d: u32,
    s: Option<&Subspace>,
    cap: u32,
) -> Result<DecompositionResult, DecomposeError> {
    let report = semi_invariants(g, q, d)?;
    for (w, polys) in &report.entries {
        if w.iter().any(|c| !c.is_zero()) {
            let a = algebra_of(g, q)?;
            return Err(DecomposeError::HypothesisFailed { weight: w.clone(), witness: a.show(&polys[0]) });
        }
    }
    let out = run(g, q, d, cap, format!("semi-invariants have weight zero up to degree {d}"))?;
    if let Some(s) = s {
        out.verify_weights(s)?;
    }
    Ok(out)
}

pub fn decompose_nilpotent(g: &LieAlgebra, q: &SubstitutionIdeal, d: u32) -> Result<DecompositionResult, DecomposeError> {
    if !g.is_nilpotent() {
        return Err(DecomposeError::NotNilpotent);
    }
    run(g, q, d, DEFAULT_NILPOTENCY_CAP, "nilpotent action".into())
}

#[derive(Debug, Clone)]
pub struct Check84 {
    pub bound: u32,
    /// The center is trivial up to the bound.
    pub center_trivial: bool,
    /// The decomposition needs no localization and has a trivial center.
    pub is_weyl: bool,
    pub weyl_rank: usize,
    /// A nonconstant central element, when one exists.
    pub certificate: Option<String>,
}

impl Check84 {
    pub fn agree(&self) -> bool {
        self.center_trivial == self.is_weyl
    }
}

pub fn check_84(g: &LieAlgebra, q: &SubstitutionIdeal, d: u32) -> Result<Check84, DecomposeError> {
    if !g.is_nilpotent() {
        return Err(DecomposeError::NotNilpotent);
    }
    let a = algebra_of(g, q)?;
    let center = center_up_to_degree(&a, d);
    let witness = center.iter().find(|p| !p.is_constant());
    let dec = decompose_nilpotent(g, q, d)?;
    let is_weyl = dec.e.is_constant() && dec.center_generators.iter().all(Poly::is_constant);
    Ok(Check84 {
        bound: d,
        center_trivial: witness.is_none(),
        is_weyl,
        weyl_rank: dec.n(),
        certificate: witness.map(|p| a.show(p)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z_to_one(g: &LieAlgebra) -> SubstitutionIdeal {
        let a = PoissonAlgebra::canonical_from_lie(g);
        SubstitutionIdeal::parse(&[("z", "1")], a.vars()).unwrap()
    }

    #[test]
    fn heisenberg_quotient() {
        let g = LieAlgebra::heisenberg(1);
        let r = decompose(&g, &z_to_one(&g), 6, None).unwrap();
        assert!(r.e.is_one());
        assert_eq!(r.n(), 1);
        assert_eq!((r.show(&r.pairs[0].0), r.show(&r.pairs[0].1)), ("x".into(), "y".into()));
        assert_eq!(r.center_basis, vec![Poly::one()]);
        assert!(r.bookkeeping(4).holds());
    }

    #[test]
    fn heisenberg_localized() {
        let g = LieAlgebra::heisenberg(1);
        let r = decompose(&g, &SubstitutionIdeal::default(), 6, None).unwrap();
        assert_eq!(r.show(&r.e), "z");
        assert_eq!(r.show(&r.pairs[0].1), "y*z^-1");
        assert_eq!(r.center_basis.len(), 13);
        assert!(r.bookkeeping(4).holds());
    }

    #[test]
    fn eng4() {
        let g = LieAlgebra::eng4();
        let r = decompose(&g, &SubstitutionIdeal::default(), 6, None).unwrap();
        assert_eq!(r.show(&r.e), "e4");
        assert_eq!((r.show(&r.pairs[0].0), r.show(&r.pairs[0].1)), ("e1".into(), "e3*e4^-1".into()));
        let shown: Vec<String> = r.center_generators.iter().map(|p| r.show(p)).collect();
        assert!(shown.contains(&"e2*e4 - 1/2*e3^2".to_string()), "{shown:?}");
        assert!(r.bookkeeping(4).holds());
    }

    #[test]
    fn abelian_and_h2() {
        for n in 1..=3 {
            let r = decompose(&LieAlgebra::abelian(n), &SubstitutionIdeal::default(), 3, None).unwrap();
            assert_eq!((r.n(), r.center_generators.len()), (0, n));
        }
        let g = LieAlgebra::heisenberg(2);
        let r = decompose(&g, &z_to_one(&g), 6, None).unwrap();
        assert_eq!(r.n(), 2);
        assert!(r.e.is_one());
        assert!(r.bookkeeping(4).holds());
    }

    #[test]
    fn hypothesis_failures() {
        let e = decompose(&LieAlgebra::aff2(), &SubstitutionIdeal::default(), 3, None);
        assert!(matches!(e, Err(DecomposeError::HypothesisFailed { .. })));
        assert_eq!(
            decompose_nilpotent(&LieAlgebra::aff2(), &SubstitutionIdeal::default(), 3).err(),
            Some(DecomposeError::NotNilpotent)
        );
    }

    #[test]
    fn corollary_checks() {
        let g = LieAlgebra::heisenberg(1);
        let c = check_84(&g, &z_to_one(&g), 4).unwrap();
        assert!(c.center_trivial && c.is_weyl);
        let c = check_84(&g, &SubstitutionIdeal::default(), 4).unwrap();
        assert!(!c.center_trivial && !c.is_weyl && c.agree());
        let c = check_84(&LieAlgebra::abelian(1), &SubstitutionIdeal::default(), 4).unwrap();
        assert!(!c.center_trivial && !c.is_weyl);
    }
}
