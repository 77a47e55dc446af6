//! Poisson algebras presented by generators, a bracket table on them, an
//! optional substitution ideal and an optional list of inverted elements.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use thiserror::Error;

use crate::lie::{LieAlgebra, LieError};
use crate::linalg::Vector;
use crate::poly::{parse, Monomial, Poly, PolyError, VarSpec};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PoissonError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("Jacobi identity fails on generators ({i}, {j}, {k}): residual {residual}")]
    JacobiViolation { i: usize, j: usize, k: usize, residual: String },
    #[error("ideal is not stable: rule for `{rule}` against generator `{generator}`")]
    NotStable { rule: String, generator: String },
    #[error("denominator {0} vanishes modulo the ideal")]
    ZeroDenominator(usize),
    #[error("variable name `{0}` occurs in both factors")]
    NameClash(String),
    #[error("not a P-derivation: fails on generators ({0}, {1})")]
    NotPDerivation(String, String),
    #[error("derivation image of `{0}` has a denominator")]
    NotPolynomial(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

/// Triangular elimination rules `var -> image`; no eliminated variable occurs
/// in any image, so one substitution pass is a normal form.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SubstitutionIdeal {
    pub rules: BTreeMap<usize, Poly>,
}

impl SubstitutionIdeal {
    pub fn new(rules: impl IntoIterator<Item = (usize, Poly)>, vars: &[VarSpec]) -> Result<Self, PoissonError> {
        let ideal = SubstitutionIdeal { rules: rules.into_iter().collect() };
        ideal.validate(vars)?;
        Ok(ideal)
    }

    /// Parses `(name, image)` pairs in the context `vars`.
    pub fn parse(rules: &[(&str, &str)], vars: &[VarSpec]) -> Result<Self, PoissonError> {
        let mut out = Vec::new();
        for (name, image) in rules {
            let v = crate::poly::var_index(vars, name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
            out.push((v, parse(image, vars)?));
        }
        Self::new(out, vars)
    }

    pub fn validate(&self, vars: &[VarSpec]) -> Result<(), PoissonError> {
        for (&v, img) in &self.rules {
            if v >= vars.len() {
                return Err(PoissonError::Invalid(format!("rule for unknown variable index {v}")));
            }
            if img.vars().iter().any(|w| self.rules.contains_key(w)) {
                return Err(PolyError::CyclicSubstitution(vars[v].name.clone()).into());
            }
            if vars[v].invertible && img.unit_inverse(vars).is_none() {
                return Err(PolyError::NonUnitImageForInvertible(vars[v].name.clone()).into());
            }
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn eliminates(&self, v: usize) -> bool {
        self.rules.contains_key(&v)
    }

    pub fn normal_form(&self, p: &Poly, vars: &[VarSpec]) -> Poly {
        if self.rules.is_empty() || p.vars().iter().all(|v| !self.rules.contains_key(v)) {
            return p.clone();
        }
        p.substitute_unchecked(&self.rules, vars)
    }
}

/// A fraction `num / Π inverted[k]^den[k]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalElement {
    pub num: Poly,
    pub den: Vec<u32>,
}

impl LocalElement {
    pub fn poly(p: Poly) -> Self {
        LocalElement { num: p, den: Vec::new() }
    }

    pub fn zero() -> Self {
        Self::poly(Poly::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_plain(&self) -> bool {
        self.den.iter().all(|&e| e == 0)
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_plain().then_some(&self.num)
    }

    fn den_at(&self, k: usize) -> u32 {
        self.den.get(k).copied().unwrap_or(0)
    }
}

impl From<Poly> for LocalElement {
    fn from(p: Poly) -> Self {
        LocalElement::poly(p)
    }
}

/// Images of the generators under a derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub images: Vec<LocalElement>,
}

impl Derivation {
    pub fn from_polys(images: Vec<Poly>) -> Self {
        Derivation { images: images.into_iter().map(LocalElement::poly).collect() }
    }

    pub fn zero(n: usize) -> Self {
        Derivation { images: vec![LocalElement::zero(); n] }
    }

    /// Polynomial images, when no image has a denominator.
    pub fn poly_images(&self) -> Option<Vec<Poly>> {
        self.images.iter().map(|e| e.as_poly().cloned()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoissonAlgebra {
    vars: Vec<VarSpec>,
    table: BTreeMap<(usize, usize), Poly>,
    ideal: SubstitutionIdeal,
    inverted: Vec<Poly>,
}

fn sorted_key(i: usize, j: usize, p: Poly) -> ((usize, usize), Poly) {
    if i < j {
        ((i, j), p)
    } else {
        ((j, i), -p)
    }
}

impl PoissonAlgebra {
    /// Builds an algebra and checks the Jacobi identity on generators.
    pub fn new(vars: Vec<VarSpec>, table: impl IntoIterator<Item = ((usize, usize), Poly)>) -> Result<Self, PoissonError> {
        let a = Self::unchecked(vars, table)?;
        a.jacobi_check()?;
        Ok(a)
    }

    pub fn unchecked(vars: Vec<VarSpec>, table: impl IntoIterator<Item = ((usize, usize), Poly)>) -> Result<Self, PoissonError> {
        let n = vars.len();
        for (k, v) in vars.iter().enumerate() {
            if !crate::poly::is_identifier(&v.name) {
                return Err(PoissonError::Invalid(format!("bad variable name `{}`", v.name)));
            }
            if vars[..k].iter().any(|w| w.name == v.name) {
                return Err(PoissonError::NameClash(v.name.clone()));
            }
        }
        let mut t = BTreeMap::new();
        for ((i, j), p) in table {
            if i >= n || j >= n || p.vars().iter().any(|&v| v >= n) {
                return Err(PoissonError::Invalid(format!("table entry ({i}, {j}) out of range")));
            }
            if i == j {
                if p.is_zero() {
                    continue;
                }
                return Err(PoissonError::Invalid(format!("nonzero self-bracket of `{}`", vars[i].name)));
            }
            let (key, p) = sorted_key(i, j, p);
            if !p.is_zero() {
                t.insert(key, p);
            }
        }
        Ok(PoissonAlgebra { vars, table: t, ideal: SubstitutionIdeal::default(), inverted: Vec::new() })
    }

    /// Parses a table given as `(name, name, poly text)` triples.
    pub fn from_strs(vars: Vec<VarSpec>, table: &[(&str, &str, &str)]) -> Result<Self, PoissonError> {
        let idx = |n: &str| crate::poly::var_index(&vars, n).ok_or_else(|| PolyError::UnknownVariable(n.to_string()));
        let mut entries = Vec::new();
        for (a, b, p) in table {
            entries.push(((idx(a)?, idx(b)?), parse(p, &vars)?));
        }
        Self::new(vars, entries)
    }

    /// Linear Poisson structure on `S(g)`: `{x_i, x_j} = Σ c_ij^k x_k`.
    pub fn canonical_from_lie(g: &LieAlgebra) -> PoissonAlgebra {
        let table = g.structure().iter().map(|(&k, v)| (k, linear_form(v)));
        Self::unchecked(g.basis().to_vec(), table.collect::<Vec<_>>()).expect("lie basis names are valid")
    }

    pub fn vars(&self) -> &[VarSpec] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn table(&self) -> &BTreeMap<(usize, usize), Poly> {
        &self.table
    }

    pub fn ideal(&self) -> &SubstitutionIdeal {
        &self.ideal
    }

    pub fn inverted(&self) -> &[Poly] {
        &self.inverted
    }

    pub fn var(&self, name: &str) -> Option<usize> {
        crate::poly::var_index(&self.vars, name)
    }

    /// Indices of the generators surviving the ideal.
    pub fn generators(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&v| !self.ideal.eliminates(v)).collect()
    }

    pub fn parse(&self, text: &str) -> Result<Poly, PoissonError> {
        Ok(self.nf(&parse(text, &self.vars)?))
    }

    pub fn show(&self, p: &Poly) -> String {
        p.to_string_with(&self.vars)
    }

    pub fn show_local(&self, a: &LocalElement) -> String {
        if a.is_plain() {
            return self.show(&a.num);
        }
        let den: Vec<String> = a
            .den
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| {
                let base = format!("({})", self.show(&self.inverted[k]));
                if e == 1 {
                    base
                } else {
                    format!("{base}^{e}")
                }
            })
            .collect();
        format!("({})/({})", self.show(&a.num), den.join("*"))
    }

    pub fn nf(&self, p: &Poly) -> Poly {
        self.ideal.normal_form(p, &self.vars)
    }

    pub fn table_entry(&self, i: usize, j: usize) -> Poly {
        if i < j {
            self.table.get(&(i, j)).cloned().unwrap_or_default()
        } else if i > j {
            self.table.get(&(j, i)).map(|p| -p).unwrap_or_default()
        } else {
            Poly::zero()
        }
    }

    /// Bracket of two polynomials through the biderivation of the table,
    /// without normal forms.
    pub fn raw_bracket(&self, p: &Poly, q: &Poly) -> Poly {
        let pv = p.vars();
        let qv = q.vars();
        let mut dp: BTreeMap<usize, Poly> = BTreeMap::new();
        let mut dq: BTreeMap<usize, Poly> = BTreeMap::new();
        let mut out = Poly::zero();
        for (&(i, j), t) in &self.table {
            let forward = pv.contains(&i) && qv.contains(&j);
            let backward = pv.contains(&j) && qv.contains(&i);
            if !forward && !backward {
                continue;
            }
            let mut term = Poly::zero();
            if forward {
                let a = dp.entry(i).or_insert_with(|| p.partial(i)).clone();
                let b = dq.entry(j).or_insert_with(|| q.partial(j));
                term += &(&a * &*b);
            }
            if backward {
                let a = dp.entry(j).or_insert_with(|| p.partial(j)).clone();
                let b = dq.entry(i).or_insert_with(|| q.partial(i));
                term -= &(&a * &*b);
            }
            out += &(&term * t);
        }
        out
    }

    pub fn bracket_poly(&self, p: &Poly, q: &Poly) -> Poly {
        if self.ideal.is_empty() {
            return self.raw_bracket(p, q);
        }
        self.nf(&self.raw_bracket(&self.nf(p), &self.nf(q)))
    }

    pub fn bracket(&self, a: &LocalElement, b: &LocalElement) -> LocalElement {
        if a.is_plain() && b.is_plain() {
            return LocalElement::poly(self.bracket_poly(&a.num, &b.num));
        }
        let s = self.den_poly(&a.den);
        let t = self.den_poly(&b.den);
        let (p, q) = (self.nf(&a.num), self.nf(&b.num));
        let mut num = &(&self.bracket_poly(&p, &q) * &s) * &t;
        num -= &(&(&self.bracket_poly(&p, &t) * &q) * &s);
        num -= &(&(&self.bracket_poly(&q, &s) * &p) * &t);
        num += &(&(&self.bracket_poly(&s, &t) * &p) * &q);
        let k = self.inverted.len();
        let den = (0..k).map(|i| 2 * (a.den_at(i) + b.den_at(i))).collect();
        self.canonical(num, den)
    }

    pub fn den_poly(&self, den: &[u32]) -> Poly {
        den.iter().enumerate().filter(|(_, &e)| e > 0).fold(Poly::one(), |acc, (k, &e)| &acc * &self.inverted[k].pow(e))
    }

    /// Normal form of the numerator and cancellation of whole powers of the
    /// inverted elements.
    pub fn canonical(&self, num: Poly, mut den: Vec<u32>) -> LocalElement {
        let mut num = self.nf(&num);
        if num.is_zero() {
            return LocalElement::zero();
        }
        for k in 0..den.len() {
            while den[k] > 0 {
                match num.div_exact(&self.inverted[k]) {
                    Some(q) => {
                        num = q;
                        den[k] -= 1;
                    }
                    None => break,
                }
            }
        }
        while den.last() == Some(&0) {
            den.pop();
        }
        LocalElement { num, den }
    }

    fn common(&self, a: &LocalElement, b: &LocalElement) -> (Poly, Poly, Vec<u32>) {
        let k = a.den.len().max(b.den.len());
        let den: Vec<u32> = (0..k).map(|i| a.den_at(i).max(b.den_at(i))).collect();
        let fa: Vec<u32> = (0..k).map(|i| den[i] - a.den_at(i)).collect();
        let fb: Vec<u32> = (0..k).map(|i| den[i] - b.den_at(i)).collect();
        (&a.num * &self.den_poly(&fa), &b.num * &self.den_poly(&fb), den)
    }

    pub fn local_add(&self, a: &LocalElement, b: &LocalElement) -> LocalElement {
        let (x, y, den) = self.common(a, b);
        self.canonical(&x + &y, den)
    }

    pub fn local_sub(&self, a: &LocalElement, b: &LocalElement) -> LocalElement {
        let (x, y, den) = self.common(a, b);
        self.canonical(&x - &y, den)
    }

    pub fn local_mul(&self, a: &LocalElement, b: &LocalElement) -> LocalElement {
        let k = a.den.len().max(b.den.len());
        let den = (0..k).map(|i| a.den_at(i) + b.den_at(i)).collect();
        self.canonical(&a.num * &b.num, den)
    }

    pub fn local_scale(&self, a: &LocalElement, c: &Rational) -> LocalElement {
        self.canonical(a.num.scale(c), a.den.clone())
    }

    pub fn local_eq(&self, a: &LocalElement, b: &LocalElement) -> bool {
        let (x, y, _) = self.common(a, b);
        self.nf(&(&x - &y)).is_zero()
    }

    /// `1 / inverted[k]` as a local element.
    pub fn inverse_of(&self, k: usize) -> LocalElement {
        let mut den = vec![0; k + 1];
        den[k] = 1;
        LocalElement { num: Poly::one(), den }
    }

    pub fn jacobi_residual(&self, i: usize, j: usize, k: usize) -> Poly {
        let v = |x| Poly::var(x);
        let b = |p: &Poly, q: &Poly| self.bracket_poly(p, q);
        let r = &(&b(&v(i), &b(&v(j), &v(k))) + &b(&v(j), &b(&v(k), &v(i)))) + &b(&v(k), &b(&v(i), &v(j)));
        self.nf(&r)
    }

    /// Jacobi identity on every generator triple.
    pub fn jacobi_check(&self) -> Result<(), PoissonError> {
        let gens = self.generators();
        for (a, &i) in gens.iter().enumerate() {
            for (b, &j) in gens.iter().enumerate().skip(a + 1) {
                for &k in gens.iter().skip(b + 1) {
                    let r = self.jacobi_residual(i, j, k);
                    if !r.is_zero() {
                        return Err(PoissonError::JacobiViolation { i, j, k, residual: self.show(&r) });
                    }
                }
            }
        }
        Ok(())
    }

    /// Ideal obtained by applying `other` after this algebra's own rules.
    fn combined_ideal(&self, other: &SubstitutionIdeal) -> Result<SubstitutionIdeal, PoissonError> {
        let mut rules: BTreeMap<usize, Poly> =
            self.ideal.rules.iter().map(|(&v, img)| (v, other.normal_form(img, &self.vars))).collect();
        for (&v, img) in &other.rules {
            let img = self.ideal.normal_form(img, &self.vars);
            if let Some(prev) = rules.get(&v) {
                if *prev != img {
                    return Err(PoissonError::Invalid(format!("conflicting rules for `{}`", self.vars[v].name)));
                }
            }
            rules.insert(v, img);
        }
        SubstitutionIdeal::new(rules, &self.vars)
    }

    /// Whether every bracket of a rule `v - f` with a generator vanishes
    /// modulo the ideal.
    pub fn is_stable_ideal(&self, ideal: &SubstitutionIdeal) -> bool {
        self.stability_witness(ideal).map(|w| w.is_none()).unwrap_or(false)
    }

    fn stability_witness(&self, ideal: &SubstitutionIdeal) -> Result<Option<(usize, usize)>, PoissonError> {
        let combined = self.combined_ideal(ideal)?;
        for (&v, f) in &ideal.rules {
            let rel = &Poly::var(v) - f;
            for w in self.generators() {
                let b = self.bracket_poly(&rel, &Poly::var(w));
                if !combined.normal_form(&b, &self.vars).is_zero() {
                    return Ok(Some((v, w)));
                }
            }
        }
        Ok(None)
    }

    pub fn quotient(&self, ideal: &SubstitutionIdeal) -> Result<PoissonAlgebra, PoissonError> {
        ideal.validate(&self.vars)?;
        if let Some((v, w)) = self.stability_witness(ideal)? {
            return Err(PoissonError::NotStable { rule: self.vars[v].name.clone(), generator: self.vars[w].name.clone() });
        }
        let combined = self.combined_ideal(ideal)?;
        let mut out = self.clone();
        out.ideal = combined;
        out.inverted = out.inverted.iter().map(|p| out.nf(p)).collect();
        if let Some(k) = out.inverted.iter().position(Poly::is_zero) {
            return Err(PoissonError::ZeroDenominator(k));
        }
        Ok(out)
    }

    /// Localization. Denominators that are monomials make their variables
    /// invertible; any other denominator is kept in the inverted list.
    pub fn localize(&self, denoms: &[Poly]) -> Result<PoissonAlgebra, PoissonError> {
        let mut out = self.clone();
        for (k, d) in denoms.iter().enumerate() {
            let d = self.nf(d);
            if d.is_zero() {
                return Err(PoissonError::ZeroDenominator(k));
            }
            if d.num_terms() == 1 {
                let (m, _) = d.leading_term().expect("nonzero");
                if !m.has_negative() {
                    for &(v, _) in m.pairs() {
                        out.vars[v].invertible = true;
                    }
                    continue;
                }
            }
            if !out.inverted.contains(&d) {
                out.inverted.push(d);
            }
        }
        Ok(out)
    }

    pub fn tensor(&self, other: &PoissonAlgebra) -> Result<PoissonAlgebra, PoissonError> {
        for v in &other.vars {
            if self.var(&v.name).is_some() {
                return Err(PoissonError::NameClash(v.name.clone()));
            }
        }
        let shift = self.nvars();
        let sh = |p: &Poly| p.map_vars(|i| i + shift);
        let mut out = self.clone();
        out.vars.extend(other.vars.iter().cloned());
        for (&(i, j), p) in &other.table {
            out.table.insert((i + shift, j + shift), sh(p));
        }
        for (&v, p) in &other.ideal.rules {
            out.ideal.rules.insert(v + shift, sh(p));
        }
        out.inverted.extend(other.inverted.iter().map(sh));
        Ok(out)
    }

    /// Drops eliminated variables, renumbering the survivors.
    pub fn reduced(&self) -> PoissonAlgebra {
        let keep = self.generators();
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let re = |p: &Poly| self.nf(p).map_vars(|i| pos[&i]);
        let vars = keep.iter().map(|&v| self.vars[v].clone()).collect();
        let mut table = BTreeMap::new();
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate().skip(a + 1) {
                let p = self.bracket_poly(&Poly::var(i), &Poly::var(j));
                if !p.is_zero() {
                    table.insert((a, b), re(&p));
                }
            }
        }
        PoissonAlgebra { vars, table, ideal: SubstitutionIdeal::default(), inverted: self.inverted.iter().map(re).collect() }
    }

    /// Nonzero brackets of surviving generators, keyed by names.
    pub fn named_table(&self) -> BTreeMap<(String, String), String> {
        let r = self.reduced();
        r.table.iter().map(|(&(i, j), p)| ((r.vars[i].name.clone(), r.vars[j].name.clone()), r.show(p))).collect()
    }

    /// Applies a derivation to a plain element.
    pub fn apply_poly(&self, d: &Derivation, p: &Poly) -> LocalElement {
        let p = self.nf(p);
        let mut acc = LocalElement::zero();
        for v in p.vars() {
            let img = &d.images[v];
            if img.is_zero() {
                continue;
            }
            let dp = LocalElement::poly(p.partial(v));
            acc = self.local_add(&acc, &self.local_mul(&dp, img));
        }
        acc
    }

    pub fn apply(&self, d: &Derivation, a: &LocalElement) -> LocalElement {
        if a.is_plain() {
            return self.apply_poly(d, &a.num);
        }
        let s = self.den_poly(&a.den);
        let ds = self.apply_poly(d, &s);
        let da = self.apply_poly(d, &a.num);
        let num = self
            .local_sub(&self.local_mul(&da, &LocalElement::poly(s)), &self.local_mul(&LocalElement::poly(a.num.clone()), &ds));
        let sq: Vec<u32> = a.den.iter().map(|e| 2 * e).collect();
        self.local_mul(&num, &LocalElement { num: Poly::one(), den: sq })
    }

    /// Applies a derivation with polynomial images to a polynomial.
    pub fn apply_plain(&self, images: &[Poly], p: &Poly) -> Poly {
        let p = self.nf(p);
        let mut acc = Poly::zero();
        for v in p.vars() {
            if !images[v].is_zero() {
                acc += &(&p.partial(v) * &images[v]);
            }
        }
        self.nf(&acc)
    }

    pub fn inner_derivation(&self, a: &LocalElement) -> Derivation {
        Derivation { images: (0..self.nvars()).map(|v| self.bracket(a, &LocalElement::poly(Poly::var(v)))).collect() }
    }

    /// First generator pair on which `d` fails to be a bracket derivation.
    pub fn p_derivation_witness(&self, d: &Derivation) -> Option<(usize, usize)> {
        let gens = self.generators();
        for (a, &i) in gens.iter().enumerate() {
            for &j in gens.iter().skip(a + 1) {
                let vi = LocalElement::poly(Poly::var(i));
                let vj = LocalElement::poly(Poly::var(j));
                let lhs = self.apply(d, &self.bracket(&vi, &vj));
                let rhs = self.local_add(&self.bracket(&d.images[i], &vj), &self.bracket(&vi, &d.images[j]));
                if !self.local_eq(&lhs, &rhs) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_p_derivation(&self, d: &Derivation) -> bool {
        self.p_derivation_witness(d).is_none()
    }

    /// The extension `A_δ{X}` with `{X, v} = δ(v)`.
    pub fn skew_extend(&self, d: &Derivation, name: &str) -> Result<PoissonAlgebra, PoissonError> {
        if let Some((i, j)) = self.p_derivation_witness(d) {
            return Err(PoissonError::NotPDerivation(self.vars[i].name.clone(), self.vars[j].name.clone()));
        }
        if self.var(name).is_some() {
            return Err(PoissonError::NameClash(name.to_string()));
        }
        let mut out = self.clone();
        let x = out.vars.len();
        out.vars.push(VarSpec::new(name));
        for v in 0..x {
            let img = self.apply_poly(d, &Poly::var(v));
            let img = img.as_poly().ok_or_else(|| PoissonError::NotPolynomial(self.vars[v].name.clone()))?;
            if !img.is_zero() {
                out.table.insert((v, x), -img);
            }
        }
        Ok(out)
    }

    /// Derivation `ε(x) = {x̄, ·}` of the canonical structure on `S(g)/Q`,
    /// with `x` in coordinates of the basis.
    pub fn epsilon_derivation(&self, x: &[Rational]) -> Derivation {
        let xp = self.nf(&linear_form(x));
        self.inner_derivation(&LocalElement::poly(xp))
    }

    /// Degree-bounded monomials in the given variables, ascending.
    pub fn monomials_up_to(vars: &[usize], d: u32) -> Vec<Monomial> {
        let mut out = vec![Monomial::one()];
        let mut frontier = vec![Monomial::one()];
        for _ in 0..d {
            let mut next = BTreeSet::new();
            for m in &frontier {
                for &v in vars {
                    next.insert(m.mul(&Monomial::var(v)));
                }
            }
            frontier = next.into_iter().collect();
            out.extend(frontier.iter().cloned());
        }
        out.sort();
        out
    }
}

/// The polynomial `Σ c_k x_k`.
pub fn linear_form(c: &[Rational]) -> Poly {
    Poly::from_terms(c.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (Monomial::var(k), x.clone())))
}

/// Coefficients of a polynomial of degree at most one in the first `n`
/// variables, when it is linear and homogeneous.
pub fn linear_coords(p: &Poly, n: usize) -> Option<Vector> {
    let mut v = crate::linalg::zero_vec(n);
    for (m, c) in p.terms() {
        match m.pairs() {
            [(i, 1)] if *i < n => v[*i] = c.clone(),
            _ => return None,
        }
    }
    Some(v)
}
