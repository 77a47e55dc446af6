//! Sparse multivariate Laurent polynomials over the rationals.

mod monomial;
mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{format_rational, Rational};

pub use monomial::Monomial;
pub use parse::{parse, parse_in};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VarSpec {
    pub name: String,
    #[serde(default)]
    pub invertible: bool,
}

impl VarSpec {
    pub fn new(name: impl Into<String>) -> Self {
        VarSpec { name: name.into(), invertible: false }
    }

    pub fn unit(name: impl Into<String>) -> Self {
        VarSpec { name: name.into(), invertible: true }
    }
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn var_index(vars: &[VarSpec], name: &str) -> Option<usize> {
    vars.iter().position(|v| v.name == name)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("negative power of a non-unit")]
    NegativePowerOfNonUnit,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("syntax error at byte {offset}: {message}")]
    SyntaxError { offset: usize, message: String },
    #[error("substitution for `{0}` is not triangular")]
    CyclicSubstitution(String),
    #[error("image of invertible variable `{0}` is not a unit monomial")]
    NonUnitImageForInvertible(String),
}

/// A Laurent polynomial: a finite map from monomials to nonzero rationals.
///
/// Terms are kept in graded lexicographic order, so equality and printing
/// are canonical.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::term(Monomial::one(), c)
    }

    pub fn from_int(c: i64) -> Self {
        Poly::constant(crate::rational::int(c))
    }

    pub fn var(index: usize) -> Self {
        Poly::term(Monomial::var(index), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one())
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn vars(&self) -> BTreeSet<usize> {
        self.terms.keys().flat_map(|m| m.pairs().iter().map(|&(i, _)| i)).collect()
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.terms.keys().any(Monomial::has_negative)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly { terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect() }
    }

    /// Makes the leading coefficient one (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.recip()),
            None => Poly::zero(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse when `self` is a nonzero constant times a
    /// monomial in invertible variables.
    pub fn unit_inverse(&self, vars: &[VarSpec]) -> Option<Poly> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        let units_only = m.pairs().iter().all(|&(i, _)| vars.get(i).is_some_and(|v| v.invertible));
        units_only.then(|| Poly::term(m.inverse(), c.recip()))
    }

    pub fn try_pow(&self, k: i64, vars: &[VarSpec]) -> Result<Poly, PolyError> {
        let exp = u32::try_from(k.unsigned_abs()).map_err(|_| PolyError::NegativePowerOfNonUnit)?;
        if k >= 0 {
            Ok(self.pow(exp))
        } else {
            let inv = self.unit_inverse(vars).ok_or(PolyError::NegativePowerOfNonUnit)?;
            Ok(inv.pow(exp))
        }
    }

    /// Formal partial derivative; Laurent exponents follow the power rule.
    pub fn partial(&self, var: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e != 0 {
                out.add_term(m.mul(&Monomial::var_pow(var, -1)), c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Simultaneous substitution `var -> image`, checked to be triangular and
    /// to send invertible variables to unit monomials.
    pub fn substitute(&self, bindings: &BTreeMap<usize, Poly>, vars: &[VarSpec]) -> Result<Poly, PolyError> {
        check_bindings(bindings, vars)?;
        Ok(self.substitute_unchecked(bindings, vars))
    }

    /// Substitution without the triangularity check. A negative exponent on a
    /// bound variable requires its image to be a unit; otherwise this panics.
    pub fn substitute_unchecked(&self, bindings: &BTreeMap<usize, Poly>, vars: &[VarSpec]) -> Poly {
        let mut cache: BTreeMap<(usize, i32), Poly> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut free = Vec::new();
            let mut acc = Poly::constant(c.clone());
            for &(i, e) in m.pairs() {
                match bindings.get(&i) {
                    None => free.push((i, e)),
                    Some(img) => {
                        let factor = cache
                            .entry((i, e))
                            .or_insert_with(|| img.try_pow(e as i64, vars).expect("negative power of a substituted non-unit"));
                        acc = &acc * &*factor;
                    }
                }
            }
            out += &acc.mul_monomial(&Monomial::from_pairs(free));
        }
        out
    }

    /// Applies the ring map sending variable `i` to `images[i]`.
    pub fn compose(&self, images: &[Poly], vars: &[VarSpec]) -> Poly {
        let bindings: BTreeMap<usize, Poly> = images.iter().cloned().enumerate().collect();
        self.substitute_unchecked(&bindings, vars)
    }

    /// Renames variable indices through `f`.
    pub fn map_vars(&self, f: impl Fn(usize) -> usize) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.map_vars(&f), c.clone())))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (lm, lc) = d.leading_term()?;
        if self.is_zero() {
            return Some(Poly::zero());
        }
        // Each quotient exponent is confined to a box set by both exponent ranges.
        let (slo, shi) = self.exponent_ranges();
        let (dlo, dhi) = d.exponent_ranges();
        let vars: BTreeSet<usize> = slo.keys().chain(dlo.keys()).copied().collect();
        let bound = |i: usize| {
            let g = |m: &BTreeMap<usize, i32>| m.get(&i).copied().unwrap_or(0);
            (g(&slo) - g(&dlo), g(&shi) - g(&dhi))
        };
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.mul(&lm.inverse());
            let inside = vars.iter().all(|&i| {
                let (lo, hi) = bound(i);
                (lo..=hi).contains(&qm.exponent(i))
            }) && qm.pairs().iter().all(|(i, _)| vars.contains(i));
            if !inside {
                return None;
            }
            let qc = c / lc;
            rem -= &d.mul_monomial(&qm).scale(&qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    fn exponent_ranges(&self) -> (BTreeMap<usize, i32>, BTreeMap<usize, i32>) {
        let vars = self.vars();
        let mut lo = BTreeMap::new();
        let mut hi = BTreeMap::new();
        for &i in &vars {
            let exps = self.terms.keys().map(|m| m.exponent(i));
            lo.insert(i, exps.clone().min().unwrap_or(0));
            hi.insert(i, exps.max().unwrap_or(0));
        }
        (lo, hi)
    }

    /// Part of total degree exactly `k`.
    pub fn homogeneous_part(&self, k: i64) -> Poly {
        Poly { terms: self.terms.iter().filter(|(m, _)| m.degree() == k).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    pub fn display<'a>(&'a self, vars: &'a [VarSpec]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, vars }
    }

    pub fn to_string_with(&self, vars: &[VarSpec]) -> String {
        self.display(vars).to_string()
    }
}

fn check_bindings(bindings: &BTreeMap<usize, Poly>, vars: &[VarSpec]) -> Result<(), PolyError> {
    let name = |i: usize| vars.get(i).map_or_else(|| format!("v{i}"), |v| v.name.clone());
    for (&v, img) in bindings {
        if img.vars().iter().any(|w| bindings.get(w).is_some_and(|b| *b != Poly::var(*w))) {
            return Err(PolyError::CyclicSubstitution(name(v)));
        }
        if vars.get(v).is_some_and(|s| s.invertible) && img.unit_inverse(vars).is_none() {
            return Err(PolyError::NonUnitImageForInvertible(name(v)));
        }
    }
    Ok(())
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    vars: &'a [VarSpec],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut first = true;
            if !abs.is_one() || m.is_one() {
                write!(f, "{}", format_rational(&abs))?;
                first = false;
            }
            for &(i, e) in m.pairs() {
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                match self.vars.get(i) {
                    Some(v) => write!(f, "{}", v.name)?,
                    None => write!(f, "v{i}")?,
                }
                if e != 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(&[]))
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { (&self).$m(&rhs) }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly { (&self).$m(rhs) }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { self.$m(&rhs) }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul);

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}
