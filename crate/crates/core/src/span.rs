//! Finite-dimensional spaces of polynomials, reduced against their leading
//! monomials.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::linalg::{Echelon, SparseRow, Vector};
use crate::poly::{Monomial, Poly};
use crate::rational::Rational;

/// Assigns column indices to monomials, largest monomial first, so echelon
/// pivots are leading monomials.
#[derive(Debug, Clone, Default)]
pub struct MonomialIndex {
    cols: BTreeMap<Monomial, usize>,
    order: Vec<Monomial>,
}

impl MonomialIndex {
    pub fn new(monomials: impl IntoIterator<Item = Monomial>) -> Self {
        let mut all: Vec<Monomial> = monomials.into_iter().collect();
        all.sort();
        all.dedup();
        all.reverse();
        let cols = all.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        MonomialIndex { cols, order: all }
    }

    pub fn of(polys: &[Poly]) -> Self {
        Self::new(polys.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone()).collect::<Vec<_>>()))
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn col(&self, m: &Monomial) -> Option<usize> {
        self.cols.get(m).copied()
    }

    pub fn monomial(&self, col: usize) -> &Monomial {
        &self.order[col]
    }

    /// Sparse row of coefficients; `None` when `p` uses an unindexed monomial.
    pub fn row(&self, p: &Poly) -> Option<SparseRow> {
        p.terms().map(|(m, c)| Some((self.col(m)?, c.clone()))).collect()
    }

    pub fn poly(&self, row: &SparseRow) -> Poly {
        Poly::from_terms(row.iter().map(|(&i, c)| (self.order[i].clone(), c.clone())))
    }

    pub fn poly_dense(&self, v: &[Rational]) -> Poly {
        Poly::from_terms(v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (self.order[i].clone(), c.clone())))
    }
}

/// Reduced basis of the span of `polys`: distinct leading monomials, each
/// basis element monic and free of the other leading monomials, listed by
/// increasing leading monomial.
pub fn reduced_basis(polys: &[Poly]) -> Vec<Poly> {
    let idx = MonomialIndex::of(polys);
    let e = Echelon::from_rows(polys.iter().map(|p| idx.row(p).expect("indexed")), idx.len());
    let mut out: Vec<Poly> = e.rows.iter().map(|r| idx.poly(r)).collect();
    out.reverse();
    out
}

pub fn span_rank(polys: &[Poly]) -> usize {
    let idx = MonomialIndex::of(polys);
    Echelon::from_rows(polys.iter().map(|p| idx.row(p).expect("indexed")), idx.len()).rank()
}

/// Whether `p` lies in the span of `basis`.
pub fn in_span(p: &Poly, basis: &[Poly]) -> bool {
    let mut all = basis.to_vec();
    all.push(p.clone());
    span_rank(&all) == span_rank(basis)
}

/// Coefficients expressing `p` in `basis` (assumed independent).
pub fn coordinates(p: &Poly, basis: &[Poly]) -> Option<Vector> {
    let mut all = basis.to_vec();
    all.push(p.clone());
    let idx = MonomialIndex::of(&all);
    let n = basis.len();
    let mut rows: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for (j, b) in basis.iter().enumerate() {
        for (m, c) in b.terms() {
            rows.entry(idx.col(m).expect("indexed")).or_default().insert(j, c.clone());
        }
    }
    let mut rhs = vec![Rational::zero(); idx.len()];
    for (m, c) in p.terms() {
        rhs[idx.col(m).expect("indexed")] = c.clone();
    }
    let rows: Vec<SparseRow> = (0..idx.len()).map(|i| rows.remove(&i).unwrap_or_default()).collect();
    crate::linalg::solve_sparse(&rows, &rhs, n)
}

/// Canonical residue modulo the span of a reduced basis.
#[derive(Debug, Clone)]
pub struct Reducer {
    basis: Vec<Poly>,
}

impl Reducer {
    pub fn new(polys: &[Poly]) -> Self {
        Reducer { basis: reduced_basis(polys) }
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn reduce(&self, p: &Poly) -> Poly {
        let mut r = p.clone();
        for b in &self.basis {
            let lm = b.leading_monomial().expect("nonzero basis element");
            let c = p.coeff(lm);
            if !c.is_zero() {
                r -= &b.scale(&c);
            }
        }
        r
    }

    /// Coordinates of a member of the span, read off at leading monomials.
    pub fn coords(&self, p: &Poly) -> Vector {
        self.basis.iter().map(|b| p.coeff(b.leading_monomial().expect("nonzero"))).collect()
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.reduce(p).is_zero()
    }
}

type Maps<'a> = &'a dyn Fn(&Poly) -> Vec<Poly>;

/// Column `j` of the stacked system holds the images of `domain[j]`, one
/// polynomial per component.
fn system(domain: &[Poly], maps: Maps) -> (Vec<SparseRow>, BTreeMap<(usize, Monomial), usize>) {
    let mut keys: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    let mut rows: Vec<SparseRow> = Vec::new();
    for (j, m) in domain.iter().enumerate() {
        for (k, img) in maps(m).into_iter().enumerate() {
            for (mm, c) in img.terms() {
                let next = rows.len();
                let r = *keys.entry((k, mm.clone())).or_insert(next);
                if r == rows.len() {
                    rows.push(SparseRow::new());
                }
                rows[r].insert(j, c.clone());
            }
        }
    }
    (rows, keys)
}

fn combine(coeffs: &[Rational], domain: &[Poly]) -> Poly {
    let mut out = Poly::zero();
    for (c, p) in coeffs.iter().zip(domain) {
        if !c.is_zero() {
            out += &p.scale(c);
        }
    }
    out
}

fn monomial_polys(domain: &[Monomial]) -> Vec<Poly> {
    domain.iter().map(|m| Poly::term(m.clone(), Rational::from_integer(1.into()))).collect()
}

/// Reduced basis of the elements in the span of `domain` killed by every
/// component of `maps`.
pub fn kernel_in(domain: &[Poly], maps: Maps) -> Vec<Poly> {
    let (rows, _) = system(domain, maps);
    let e = Echelon::from_rows(rows, domain.len());
    let polys: Vec<Poly> = e.nullspace().iter().map(|v| combine(v, domain)).collect();
    reduced_basis(&polys)
}

pub fn kernel(domain: &[Monomial], maps: &dyn Fn(&Monomial) -> Vec<Poly>) -> Vec<Poly> {
    let polys = monomial_polys(domain);
    kernel_in(&polys, &|p: &Poly| maps(p.leading_monomial().expect("monomial")))
}

/// Some `u` in the span of `domain` whose images under `maps` equal
/// `targets` componentwise.
pub fn preimage_in(domain: &[Poly], maps: Maps, targets: &[Poly]) -> Option<Poly> {
    let (mut rows, mut keys) = system(domain, maps);
    let mut rhs_entries: Vec<(usize, Rational)> = Vec::new();
    for (k, t) in targets.iter().enumerate() {
        for (m, c) in t.terms() {
            let next = rows.len();
            let r = *keys.entry((k, m.clone())).or_insert(next);
            if r == rows.len() {
                rows.push(SparseRow::new());
            }
            rhs_entries.push((r, c.clone()));
        }
    }
    let mut rhs = vec![Rational::zero(); rows.len()];
    for (r, c) in rhs_entries {
        rhs[r] = c;
    }
    let x = crate::linalg::solve_sparse(&rows, &rhs, domain.len())?;
    Some(combine(&x, domain))
}

pub fn preimage(domain: &[Monomial], maps: &dyn Fn(&Monomial) -> Vec<Poly>, targets: &[Poly]) -> Option<Poly> {
    let polys = monomial_polys(domain);
    preimage_in(&polys, &|p: &Poly| maps(p.leading_monomial().expect("monomial")), targets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_in;

    #[test]
    fn reduced_spans() {
        let p = |s| parse_in(s, &["x", "y"], &[]).unwrap();
        let b = reduced_basis(&[p("x + y"), p("2*x - y"), p("3*x")]);
        assert_eq!(b, vec![p("y"), p("x")]);
        assert!(in_span(&p("x - 5*y"), &b));
        assert!(!in_span(&p("x*y"), &b));
        let c = coordinates(&p("2*x + 3*y"), &[p("x + y"), p("y")]).unwrap();
        assert_eq!(c, vec![crate::rational::int(2), crate::rational::int(1)]);
    }

    #[test]
    fn kernels_and_preimages() {
        let p = |s| parse_in(s, &["x", "y"], &[]).unwrap();
        let dom = [p("1"), p("x"), p("y"), p("x*y")].map(|q| q.leading_monomial().unwrap().clone());
        let dx = |m: &Monomial| vec![Poly::term(m.clone(), Rational::from_integer(1.into())).partial(0)];
        assert_eq!(kernel(&dom, &dx), vec![p("1"), p("y")]);
        assert_eq!(preimage(&dom, &dx, &[p("3*y + 1")]), Some(p("3*x*y + x")));
        assert_eq!(preimage(&dom, &dx, &[p("x")]), None);
    }

    #[test]
    fn residues() {
        let p = |s| parse_in(s, &["x", "y"], &[]).unwrap();
        let r = Reducer::new(&[p("x + y"), p("y^2")]);
        assert_eq!(r.reduce(&p("3*x + y^2 + 1")), p("-3*y + 1"));
        assert!(r.contains(&p("2*x + 2*y - y^2")));
        assert_eq!(r.coords(&p("2*x + 2*y - y^2")), vec![crate::rational::int(2), crate::rational::int(-1)]);
        let dom = [p("x"), p("x + y"), p("x*y")];
        let dy = |q: &Poly| vec![q.partial(1)];
        assert_eq!(kernel_in(&dom, &dy), vec![p("x")]);
        let u = preimage_in(&dom, &dy, &[p("x + 1")]).unwrap();
        assert_eq!(u.partial(1), p("x + 1"));
    }
}
