//! Exact linear algebra over the rationals.
//!
//! Systems are kept as sparse rows and reduced with rational Gauss-Jordan
//! elimination; every result is exact.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{divisors, Rational};

pub type Vector = Vec<Rational>;
pub type SparseRow = BTreeMap<usize, Rational>;

pub fn zero_vec(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_scaled(acc: &mut [Rational], v: &[Rational], c: &Rational) {
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += b * c;
        }
    }
}

pub fn scale_vec(v: &[Rational], c: &Rational) -> Vector {
    v.iter().map(|x| x * c).collect()
}

pub fn sparse(v: &[Rational]) -> SparseRow {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn dense(row: &SparseRow, n: usize) -> Vector {
    let mut v = zero_vec(n);
    for (&i, x) in row {
        v[i] = x.clone();
    }
    v
}

/// Reduced row echelon form of a sparse system.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub ncols: usize,
    /// Row `k` has leading one at column `pivots[k]`.
    pub rows: Vec<SparseRow>,
    pub pivots: Vec<usize>,
}

fn row_sub_scaled(target: &mut SparseRow, src: &SparseRow, c: &Rational) {
    for (&j, x) in src {
        let entry = target.entry(j).or_insert_with(Rational::zero);
        *entry -= x * c;
        if entry.is_zero() {
            target.remove(&j);
        }
    }
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_rows(rows: impl IntoIterator<Item = SparseRow>, ncols: usize) -> Self {
        let mut e = Echelon::new(ncols);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the current rows, returning the remainder.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if let Some(c) = row.get(&p).cloned() {
                row_sub_scaled(&mut row, r, &c);
            }
        }
        row
    }

    /// Adds a row; returns false when it was already in the span.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = self.reduce(row);
        let Some((&p, lead)) = row.iter().next() else {
            return false;
        };
        let inv = lead.recip();
        for x in row.values_mut() {
            *x *= &inv;
        }
        for r in &mut self.rows {
            if let Some(c) = r.get(&p).cloned() {
                row_sub_scaled(r, &row, &c);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, row);
        true
    }

    pub fn contains(&self, row: &SparseRow) -> bool {
        self.reduce(row.clone()).is_empty()
    }

    /// Basis of the solution space of `rows * x = 0`.
    pub fn nullspace(&self) -> Vec<Vector> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|&j| !is_pivot[j]) {
            let mut v = zero_vec(self.ncols);
            v[free] = Rational::one();
            for (r, &p) in self.rows.iter().zip(&self.pivots) {
                if let Some(c) = r.get(&free) {
                    v[p] = -c.clone();
                }
            }
            out.push(v);
        }
        out
    }
}

/// Basis of `{x : rows * x = 0}`.
pub fn nullspace(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    Echelon::from_rows(rows.iter().map(|r| sparse(r)), ncols).nullspace()
}

pub fn rank(rows: &[Vector]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    Echelon::from_rows(rows.iter().map(|r| sparse(r)), ncols).rank()
}

/// Particular solution of `rows * x = rhs` in sparse form.
pub fn solve_sparse(rows: &[SparseRow], rhs: &[Rational], ncols: usize) -> Option<Vector> {
    let aug = ncols;
    let mut e = Echelon::new(ncols + 1);
    for (r, b) in rows.iter().zip(rhs) {
        let mut row = r.clone();
        if !b.is_zero() {
            row.insert(aug, b.clone());
        }
        e.insert(row);
    }
    if e.pivots.contains(&aug) {
        return None;
    }
    let mut x = zero_vec(ncols);
    for (r, &p) in e.rows.iter().zip(&e.pivots) {
        if let Some(b) = r.get(&aug) {
            x[p] = b.clone();
        }
    }
    Some(x)
}

pub fn solve(rows: &[Vector], rhs: &[Rational]) -> Option<Vector> {
    let ncols = rows.first().map_or(0, Vec::len);
    let sp: Vec<SparseRow> = rows.iter().map(|r| sparse(r)).collect();
    solve_sparse(&sp, rhs, ncols)
}

/// A linear subspace of `Q^n`, stored by its reduced echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    pub ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::span(ambient, (0..ambient).map(|i| unit_vec(ambient, i)))
    }

    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = Vector>) -> Self {
        let e = Echelon::from_rows(vectors.into_iter().map(|v| sparse(&v)), ambient);
        Subspace { ambient, basis: e.rows.iter().map(|r| dense(r, ambient)).collect() }
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.echelon().contains(&sparse(v))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        let e = self.echelon();
        other.basis.iter().all(|v| e.contains(&sparse(v)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.ambient, self.basis.iter().chain(&other.basis).cloned())
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // Solve a·self = b·other through the nullspace of the stacked columns.
        let k = self.dim();
        let cols = k + other.dim();
        let rows: Vec<Vector> = (0..self.ambient)
            .map(|i| self.basis.iter().map(|v| v[i].clone()).chain(other.basis.iter().map(|v| -v[i].clone())).collect())
            .collect();
        let ns = nullspace(&rows, cols);
        Subspace::span(
            self.ambient,
            ns.iter().map(|c| {
                let mut v = zero_vec(self.ambient);
                for (a, b) in c[..k].iter().zip(&self.basis) {
                    add_scaled(&mut v, b, a);
                }
                v
            }),
        )
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[Rational]) -> Option<Vector> {
        let e = self.echelon();
        if !e.contains(&sparse(v)) {
            return None;
        }
        Some(e.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn echelon(&self) -> Echelon {
        Echelon::from_rows(self.basis.iter().map(|v| sparse(v)), self.ambient)
    }

    /// Standard basis vectors extending a basis of `self` to the ambient space,
    /// chosen greedily by index.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut e = self.echelon();
        (0..self.ambient).filter(|&i| e.insert(sparse(&unit_vec(self.ambient, i)))).collect()
    }
}

/// Dense square or rectangular matrix acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: Vec<Vector>,
}

impl Matrix {
    pub fn zeros(r: usize, c: usize) -> Self {
        Matrix { rows: vec![zero_vec(c); r] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix { rows: (0..n).map(|i| unit_vec(n, i)).collect() }
    }

    pub fn from_columns(cols: &[Vector], nrows: usize) -> Self {
        let mut m = Matrix::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..nrows {
                m.rows[i][j] = c[i].clone();
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn apply(&self, v: &[Rational]) -> Vector {
        self.rows.iter().map(|r| r.iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = other.ncols();
        let mut out = Matrix::zeros(self.nrows(), n);
        for (i, r) in self.rows.iter().enumerate() {
            for (k, a) in r.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                add_scaled(&mut out.rows[i], &other.rows[k], a);
            }
        }
        out
    }

    pub fn sub_scalar(&self, c: &Rational) -> Matrix {
        let mut out = self.clone();
        for (i, r) in out.rows.iter_mut().enumerate() {
            r[i] -= c;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| is_zero_vec(r))
    }

    pub fn kernel(&self) -> Vec<Vector> {
        nullspace(&self.rows, self.ncols())
    }

    pub fn trace(&self) -> Rational {
        self.rows.iter().enumerate().map(|(i, r)| r[i].clone()).sum()
    }

    pub fn is_nilpotent(&self) -> bool {
        let mut p = self.clone();
        for _ in 1..self.nrows().max(1) {
            p = p.mul(self);
        }
        p.is_zero()
    }

    /// Characteristic polynomial `det(t·I − M)` as coefficients, constant
    /// term first (monic of degree `n`).
    pub fn char_poly(&self) -> Vector {
        let n = self.nrows();
        let mut coeffs = zero_vec(n + 1);
        coeffs[n] = Rational::one();
        let mut m = Matrix::zeros(n, n);
        for k in 1..=n {
            let mut next = self.mul(&m);
            for i in 0..n {
                next.rows[i][i] += &coeffs[n - k + 1];
            }
            m = next;
            let c = -(self.mul(&m).trace()) / Rational::from_integer(BigInt::from(k));
            coeffs[n - k] = c;
        }
        coeffs
    }
}

/// Evaluates a coefficient list (constant term first) at `x`.
pub fn eval_univariate(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Rational roots of a univariate polynomial with multiplicity, in increasing
/// order. The second value is true when the polynomial splits over Q.
pub fn rational_roots(coeffs: &[Rational]) -> (Vec<(Rational, usize)>, bool) {
    let mut c: Vector = coeffs.to_vec();
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    let degree = c.len().saturating_sub(1);
    let mut roots: Vec<(Rational, usize)> = Vec::new();
    let mut zero_mult = 0;
    while c.len() > 1 && c[0].is_zero() {
        c.remove(0);
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((Rational::zero(), zero_mult));
    }
    if c.len() > 1 {
        let lcm = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = c.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let ps = divisors(&ints[0]);
        let qs = divisors(ints.last().expect("nonconstant"));
        let mut candidates: Vec<Rational> = Vec::new();
        for p in &ps {
            for q in &qs {
                let r = Rational::new(p.clone(), q.clone());
                candidates.push(r.clone());
                candidates.push(-r);
            }
        }
        candidates.sort();
        candidates.dedup();
        for r in candidates {
            let mut mult = 0;
            while c.len() > 1 && eval_univariate(&c, &r).is_zero() {
                c = deflate(&c, &r);
                mult += 1;
            }
            if mult > 0 {
                roots.push((r, mult));
            }
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    let found: usize = roots.iter().map(|(_, m)| m).sum();
    (roots, found == degree)
}

/// Divides by `(t - r)` assuming `r` is a root.
fn deflate(c: &[Rational], r: &Rational) -> Vector {
    let n = c.len() - 1;
    let mut out = zero_vec(n);
    let mut carry = Rational::zero();
    for k in (0..n).rev() {
        carry = &c[k + 1] + carry * r;
        out[k] = carry.clone();
    }
    out
}

/// Smallest positive integer multiple of `v` with coprime integer entries,
/// sign chosen so the first nonzero entry is positive.
pub fn primitive(v: &[Rational]) -> Vector {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) { -BigInt::one() } else { BigInt::one() };
    ints.into_iter().map(|x| Rational::from_integer(x / &g * &sign)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix { rows: rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect() }
    }

    #[test]
    fn nullspace_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a.rows), 2);
        let ns = a.kernel();
        assert_eq!(ns.len(), 1);
        assert!(is_zero_vec(&a.apply(&ns[0])));
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let x = solve(&a.rows, &[int(3), int(1)]).unwrap();
        assert_eq!(x, vec![int(2), int(1)]);
        let b = m(&[&[1, 1], &[2, 2]]);
        assert!(solve(&b.rows, &[int(1), int(3)]).is_none());
    }

    #[test]
    fn subspace_ops() {
        let u = Subspace::span(3, [unit_vec(3, 0), unit_vec(3, 1)]);
        let w = Subspace::span(3, [unit_vec(3, 1), unit_vec(3, 2)]);
        let i = u.intersection(&w);
        assert_eq!(i, Subspace::span(3, [unit_vec(3, 1)]));
        assert_eq!(u.sum(&w).dim(), 3);
        assert_eq!(i.complement_indices(), vec![0, 2]);
        assert_eq!(u.coords(&[int(2), int(5), int(0)]), Some(vec![int(2), int(5)]));
    }

    #[test]
    fn char_poly_and_roots() {
        let a = m(&[&[2, 1], &[0, 3]]);
        assert_eq!(a.char_poly(), vec![int(6), int(-5), int(1)]);
        let (roots, split) = rational_roots(&a.char_poly());
        assert!(split);
        assert_eq!(roots, vec![(int(2), 1), (int(3), 1)]);
        let rot = m(&[&[0, -1], &[1, 0]]);
        let (roots, split) = rational_roots(&rot.char_poly());
        assert!(roots.is_empty() && !split);
        let (roots, split) = rational_roots(&[int(0), int(0), int(-1), int(2)]);
        assert!(split);
        assert_eq!(roots, vec![(int(0), 2), (rat(1, 2), 1)]);
        assert!(m(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]).is_nilpotent());
    }

    #[test]
    fn primitive_vector() {
        assert_eq!(primitive(&[rat(-1, 2), rat(1, 3)]), vec![int(3), int(-2)]);
    }
}
