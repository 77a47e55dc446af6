//! Weyl-Poisson algebras `B_n(Z)` and the transforms that split off Weyl
//! factors: coefficient extraction, potentials, derivation splitting and the
//! exponential isomorphisms attached to a locally nilpotent derivation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::poisson::{Derivation, LocalElement, PoissonAlgebra, PoissonError, SubstitutionIdeal};
use crate::poly::{Monomial, Poly, VarSpec};
use crate::rational::{factorial, Rational};
use crate::span;

pub const DEFAULT_NILPOTENCY_CAP: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error(transparent)]
    Poisson(#[from] PoissonError),
    #[error("closure condition fails for indices ({0}, {1})")]
    NotClosed(usize, usize),
    #[error("no Laurent antiderivative in `{0}`")]
    NotIntegrable(String),
    #[error("not a P-derivation: fails on generators ({0}, {1})")]
    NotPDerivation(String, String),
    #[error("alpha must be a single variable")]
    AlphaNotAVariable,
    #[error("derivation is not nilpotent within {0} steps")]
    LocalNilpotencyCapExceeded(u32),
    #[error("condition failed: {0}")]
    ConditionFailed(String),
    #[error("elements `{0}` and `{1}` do not commute")]
    NotCommuting(String, String),
    #[error("generator `{0}` is not reached")]
    NotGenerating(String),
}

/// `B_n(Z)`: pairs `X_i, Y_i` with `{X_i, Y_j} = δ_ij` and central
/// variables; `primed` inverts every `X_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylPresentation {
    pub n: usize,
    pub center_vars: Vec<VarSpec>,
    pub primed: bool,
}

impl WeylPresentation {
    pub fn new(n: usize) -> Self {
        WeylPresentation { n, center_vars: Vec::new(), primed: false }
    }

    pub fn with_center(n: usize, center: &[&str]) -> Self {
        WeylPresentation { n, center_vars: center.iter().map(|s| VarSpec::new(*s)).collect(), primed: false }
    }

    pub fn x(&self, i: usize) -> usize {
        i
    }

    pub fn y(&self, i: usize) -> usize {
        self.n + i
    }

    pub fn pair_vars(&self) -> Vec<usize> {
        (0..2 * self.n).collect()
    }

    pub fn center_indices(&self) -> Vec<usize> {
        (2 * self.n..2 * self.n + self.center_vars.len()).collect()
    }

    pub fn vars(&self) -> Vec<VarSpec> {
        let xs = (1..=self.n).map(|i| VarSpec { name: format!("X{i}"), invertible: self.primed });
        let ys = (1..=self.n).map(|i| VarSpec::new(format!("Y{i}")));
        xs.chain(ys).chain(self.center_vars.iter().cloned()).collect()
    }

    pub fn build(&self) -> PoissonAlgebra {
        let table = (0..self.n).map(|i| ((self.x(i), self.y(i)), Poly::one()));
        PoissonAlgebra::unchecked(self.vars(), table.collect::<Vec<_>>()).expect("weyl names are valid")
    }

    /// `({X_i, a}, {Y_i, a}) = (∂a/∂Y_i, −∂a/∂X_i)`.
    pub fn bracket_via_partials(&self, a: &Poly, i: usize) -> (Poly, Poly) {
        (a.partial(self.y(i)), -a.partial(self.x(i)))
    }

    /// Central coefficients of the generators, peeled off one monomial at a
    /// time with iterated inner derivations.
    pub fn extract_core(&self, gens: &[Poly]) -> Vec<Poly> {
        let alg = self.build();
        let pair = self.pair_vars();
        let mut out: Vec<Poly> = Vec::new();
        for g in gens {
            let mut a = g.clone();
            while !a.is_zero() {
                let top = a
                    .terms()
                    .map(|(m, _)| pair_part(m, &pair))
                    .max_by(|u, v| u.degree().cmp(&v.degree()).then(u.cmp(v)))
                    .expect("nonzero");
                let mut c = a.clone();
                let mut scale = Rational::one();
                for &(v, e) in top.pairs() {
                    let (partner, sign) = if v < self.n { (self.y(v), -1) } else { (self.x(v - self.n), 1) };
                    for _ in 0..e {
                        // d_{Y_i} = −∂/∂X_i and d_{X_i} = ∂/∂Y_i.
                        c = alg.bracket_poly(&Poly::var(partner), &c);
                        scale *= Rational::from_integer(sign.into());
                    }
                    scale /= Rational::from_integer(factorial(e as u32));
                }
                let z = c.scale(&scale);
                debug_assert!(z.vars().iter().all(|v| !pair.contains(v)));
                a -= &z.mul_monomial(&top);
                if !z.is_zero() && !out.contains(&z) {
                    out.push(z);
                }
            }
        }
        out
    }

    /// `b` with `∂b/∂X_i = p_i` and `∂b/∂Y_i = q_i`, zero constant term.
    pub fn integrate_potential(&self, p: &[Poly], q: &[Poly]) -> Result<Poly, WeylError> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                if i < j && p[i].partial(self.x(j)) != p[j].partial(self.x(i)) {
                    return Err(WeylError::NotClosed(i, j));
                }
                if i < j && q[i].partial(self.y(j)) != q[j].partial(self.y(i)) {
                    return Err(WeylError::NotClosed(i, j));
                }
                if q[i].partial(self.x(j)) != p[j].partial(self.y(i)) {
                    return Err(WeylError::NotClosed(i, j));
                }
            }
        }
        let vars: Vec<usize> = self.pair_vars();
        let partials: Vec<Poly> = p.iter().chain(q).cloned().collect();
        let names = self.vars();
        integrate(&vars, &partials, &names)
    }

    /// Splits `δ = d_b + δ′` with `δ′` killing every `X_i, Y_i`.
    pub fn split_derivation(&self, d: &Derivation) -> Result<(Poly, Derivation), WeylError> {
        let alg = self.build();
        if let Some((i, j)) = alg.p_derivation_witness(d) {
            return Err(WeylError::NotPDerivation(alg.vars()[i].name.clone(), alg.vars()[j].name.clone()));
        }
        let imgs = d.poly_images().ok_or(WeylError::ConditionFailed("derivation has denominators".into()))?;
        let p: Vec<Poly> = (0..self.n).map(|i| imgs[self.y(i)].clone()).collect();
        let q: Vec<Poly> = (0..self.n).map(|i| -&imgs[self.x(i)]).collect();
        let b = self.integrate_potential(&p, &q)?;
        let inner = alg.inner_derivation(&LocalElement::poly(b.clone()));
        let rest: Vec<Poly> = imgs.iter().zip(&inner.images).map(|(a, c)| a - &c.num).collect();
        let pair = self.pair_vars();
        for (v, r) in rest.iter().enumerate() {
            if pair.contains(&v) && !r.is_zero() {
                return Err(WeylError::NotClosed(v, v));
            }
            if r.vars().iter().any(|w| pair.contains(w)) {
                return Err(WeylError::NotClosed(v, v));
            }
        }
        Ok((b, Derivation::from_polys(rest)))
    }
}

fn pair_part(m: &Monomial, pair: &[usize]) -> Monomial {
    Monomial::from_pairs(m.pairs().iter().copied().filter(|(v, _)| pair.contains(v)))
}

/// Antiderivative of `p` in `var` without constant of integration.
pub fn antiderivative(p: &Poly, var: usize, vars: &[VarSpec]) -> Result<Poly, WeylError> {
    let mut out = Poly::zero();
    for (m, c) in p.terms() {
        let e = m.exponent(var);
        if e == -1 {
            return Err(WeylError::NotIntegrable(vars.get(var).map_or_else(|| format!("v{var}"), |v| v.name.clone())));
        }
        out.add_term(m.mul(&Monomial::var(var)), c / Rational::from_integer((e + 1).into()));
    }
    Ok(out)
}

/// `b` with `∂b/∂vars[k] = partials[k]` for all `k`, by successive
/// antiderivatives; fails when the data is not a gradient.
pub fn integrate(vars: &[usize], partials: &[Poly], names: &[VarSpec]) -> Result<Poly, WeylError> {
    let mut b = Poly::zero();
    for (k, &v) in vars.iter().enumerate() {
        let r = &partials[k] - &b.partial(v);
        if let Some(&w) = vars[..k].iter().find(|&&w| r.vars().contains(&w)) {
            return Err(WeylError::NotClosed(k, vars.iter().position(|&u| u == w).unwrap_or(k)));
        }
        b += &antiderivative(&r, v, names)?;
    }
    for (k, &v) in vars.iter().enumerate() {
        if b.partial(v) != partials[k] {
            return Err(WeylError::NotClosed(k, k));
        }
    }
    Ok(b)
}

/// Data for the exponential transform along a locally nilpotent derivation
/// `δ` with a central slice variable `α`, `δ(α) = 1`.
#[derive(Debug, Clone)]
pub struct ChiContext {
    pub source: PoissonAlgebra,
    pub delta: Vec<Poly>,
    pub alpha: usize,
    pub cap: u32,
    /// `A/Aα` with a new central variable `Y` appended.
    pub target: PoissonAlgebra,
    pub y: usize,
}

impl ChiContext {
    pub fn new(source: PoissonAlgebra, delta: Derivation, alpha: &Poly, cap: u32) -> Result<Self, WeylError> {
        let a = match alpha.leading_term() {
            Some((m, c)) if alpha.num_terms() == 1 && c.is_one() && m.pairs().len() == 1 && m.pairs()[0].1 == 1 => m.pairs()[0].0,
            _ => return Err(WeylError::AlphaNotAVariable),
        };
        let delta = delta.poly_images().ok_or(WeylError::ConditionFailed("derivation has denominators".into()))?;
        if let Some((i, j)) = source.p_derivation_witness(&Derivation::from_polys(delta.clone())) {
            return Err(WeylError::NotPDerivation(source.vars()[i].name.clone(), source.vars()[j].name.clone()));
        }
        if !source.apply_plain(&delta, &Poly::var(a)).is_one() {
            return Err(WeylError::ConditionFailed("delta(alpha) != 1".into()));
        }
        for v in source.generators() {
            if !source.bracket_poly(&Poly::var(a), &Poly::var(v)).is_zero() {
                return Err(WeylError::ConditionFailed(format!("alpha does not commute with `{}`", source.vars()[v].name)));
            }
            let mut p = Poly::var(v);
            let mut steps = 0;
            while !p.is_zero() {
                if steps == cap {
                    return Err(WeylError::LocalNilpotencyCapExceeded(cap));
                }
                p = source.apply_plain(&delta, &p);
                steps += 1;
            }
        }
        let quotient = source.quotient(&SubstitutionIdeal { rules: [(a, Poly::zero())].into() })?;
        let yname = fresh_name(quotient.vars(), "Y");
        let central = PoissonAlgebra::unchecked(vec![VarSpec::new(yname)], [])?;
        let target = quotient.tensor(&central)?;
        let y = target.nvars() - 1;
        Ok(ChiContext { source, delta, alpha: a, cap, target, y })
    }

    fn iterate(&self, p: &Poly) -> Result<Vec<Poly>, WeylError> {
        let limit = self.cap.saturating_mul(1 + p.degree().unwrap_or(0).max(0) as u32);
        let mut out = Vec::new();
        let mut cur = self.source.nf(p);
        while !cur.is_zero() {
            if out.len() as u32 > limit {
                return Err(WeylError::LocalNilpotencyCapExceeded(self.cap));
            }
            let next = self.source.apply_plain(&self.delta, &cur);
            out.push(cur);
            cur = next;
        }
        Ok(out)
    }

    /// `χ(p) = Σ 1/n! δⁿ(p)‾ Yⁿ`.
    pub fn chi(&self, p: &Poly) -> Result<Poly, WeylError> {
        let mut out = Poly::zero();
        for (n, t) in self.iterate(p)?.iter().enumerate() {
            let c = Rational::new(BigInt::one(), factorial(n as u32));
            let term = self.target.nf(t).scale(&c).mul_monomial(&Monomial::var_pow(self.y, n as i32));
            out += &term;
        }
        Ok(out)
    }

    /// `θ(p̄) = Σ (−1)^m/m! δ^m(p) α^m` on `A/Aα`, extended by `Y ↦ α`.
    pub fn theta(&self, q: &Poly) -> Result<Poly, WeylError> {
        let mut by_y: BTreeMap<i32, Poly> = BTreeMap::new();
        for (m, c) in q.terms() {
            let (e, rest) = m.split_var(self.y);
            by_y.entry(e).or_default().add_term(rest, c.clone());
        }
        let mut out = Poly::zero();
        for (e, pbar) in by_y {
            let mut t = Poly::zero();
            for (m, dm) in self.iterate(&pbar)?.iter().enumerate() {
                let sign = if m % 2 == 0 { 1 } else { -1 };
                let c = Rational::new(BigInt::from(sign), factorial(m as u32));
                t += &dm.scale(&c).mul_monomial(&Monomial::var_pow(self.alpha, m as i32));
            }
            out += &t.mul_monomial(&Monomial::var_pow(self.alpha, e));
        }
        Ok(self.source.nf(&out))
    }
}

fn fresh_name(vars: &[VarSpec], base: &str) -> String {
    let mut name = base.to_string();
    let mut k = 1;
    while vars.iter().any(|v| v.name == name) {
        name = format!("{base}{k}");
        k += 1;
    }
    name
}

/// The extension `A_δ{X}` presented as `A/Aα ⊗ B_1`.
#[derive(Debug, Clone)]
pub struct ChiTensor {
    pub extension: PoissonAlgebra,
    pub target: PoissonAlgebra,
    /// Images of the extension's generators.
    pub forward: Vec<Poly>,
    /// Preimages of the target's generators.
    pub backward: Vec<Poly>,
}

impl ChiContext {
    pub fn chi_tensor(&self, xname: &str) -> Result<ChiTensor, WeylError> {
        let ext = self.source.skew_extend(&Derivation::from_polys(self.delta.clone()), xname)?;
        let base = self.source.quotient(&SubstitutionIdeal { rules: [(self.alpha, Poly::zero())].into() })?;
        let x1 = fresh_name(base.vars(), "X1");
        let y1 = fresh_name(base.vars(), "Y1");
        let b1 = PoissonAlgebra::unchecked(vec![VarSpec::new(x1), VarSpec::new(y1)], [((0, 1), Poly::one())])?;
        let target = base.tensor(&b1)?;
        let (tx, ty) = (target.nvars() - 2, target.nvars() - 1);
        let to_target = |p: &Poly| p.map_vars(|v| if v == self.y { ty } else { v });
        let xext = ext.nvars() - 1;
        let mut forward = Vec::new();
        for v in 0..ext.nvars() {
            if v == xext {
                forward.push(Poly::var(tx));
            } else {
                forward.push(to_target(&self.chi(&Poly::var(v))?));
            }
        }
        let mut backward = Vec::new();
        for v in 0..target.nvars() {
            if v == tx {
                backward.push(Poly::var(xext));
            } else if v == ty {
                backward.push(Poly::var(self.alpha));
            } else {
                backward.push(self.theta(&Poly::var(v))?);
            }
        }
        let out = ChiTensor { extension: ext, target, forward, backward };
        out.verify()?;
        Ok(out)
    }
}

impl ChiTensor {
    /// Bracket preservation on generators and both roundtrips on generators.
    pub fn verify(&self) -> Result<(), WeylError> {
        let (e, t) = (&self.extension, &self.target);
        for i in e.generators() {
            for j in e.generators() {
                if i >= j {
                    continue;
                }
                let lhs = t.nf(&e.bracket_poly(&Poly::var(i), &Poly::var(j)).compose(&self.forward, t.vars()));
                let rhs = t.bracket_poly(&self.forward[i], &self.forward[j]);
                if lhs != rhs {
                    return Err(WeylError::ConditionFailed(format!(
                        "bracket of `{}` and `{}` not preserved",
                        e.vars()[i].name,
                        e.vars()[j].name
                    )));
                }
            }
            let back = e.nf(&self.forward[i].compose(&self.backward, e.vars()));
            if back != Poly::var(i) {
                return Err(WeylError::ConditionFailed(format!("roundtrip fails on `{}`", e.vars()[i].name)));
            }
        }
        for v in t.generators() {
            let there = t.nf(&self.backward[v].compose(&self.forward, t.vars()));
            if there != Poly::var(v) {
                return Err(WeylError::ConditionFailed(format!("roundtrip fails on `{}`", t.vars()[v].name)));
            }
        }
        Ok(())
    }
}

/// Checks that `bsub` and the Weyl pairs `csub` commute, that the pairs
/// satisfy the `B_n` relations, and that `B ⊗ C → A` is injective and
/// reaches every generator of `A` on the degree-`d` slice.
pub fn tensor_presentation_check(a: &PoissonAlgebra, bsub: &[Poly], csub: &[(Poly, Poly)], d: u32) -> Result<(), WeylError> {
    let cflat: Vec<Poly> = csub.iter().flat_map(|(x, y)| [x.clone(), y.clone()]).collect();
    for b in bsub {
        for c in &cflat {
            if !a.bracket_poly(b, c).is_zero() {
                return Err(WeylError::NotCommuting(a.show(b), a.show(c)));
            }
        }
    }
    for (i, (xi, yi)) in csub.iter().enumerate() {
        for (j, (xj, yj)) in csub.iter().enumerate() {
            let delta = if i == j { Poly::one() } else { Poly::zero() };
            if a.bracket_poly(xi, yj) != delta {
                return Err(WeylError::NotCommuting(a.show(xi), a.show(yj)));
            }
            if !a.bracket_poly(xi, xj).is_zero() || !a.bracket_poly(yi, yj).is_zero() {
                return Err(WeylError::NotCommuting(a.show(xi), a.show(xj)));
            }
        }
    }
    let bmons = PoissonAlgebra::monomials_up_to(&(0..bsub.len()).collect::<Vec<_>>(), d);
    let bimgs: Vec<Poly> = bmons.iter().map(|m| a.nf(&Poly::term(m.clone(), Rational::one()).compose(bsub, a.vars()))).collect();
    let bbasis = span::reduced_basis(&bimgs);
    let cmons = PoissonAlgebra::monomials_up_to(&(0..cflat.len()).collect::<Vec<_>>(), d);
    let mut products = Vec::new();
    for m in &cmons {
        let c = a.nf(&Poly::term(m.clone(), Rational::one()).compose(&cflat, a.vars()));
        for b in &bbasis {
            products.push(a.nf(&(b * &c)));
        }
    }
    if span::span_rank(&products) != products.len() {
        return Err(WeylError::ConditionFailed("multiplication map has a kernel".into()));
    }
    for v in a.generators() {
        if !span::in_span(&Poly::var(v), &products) {
            return Err(WeylError::NotGenerating(a.vars()[v].name.clone()));
        }
    }
    Ok(())
}
