//! Finite-dimensional Lie algebras over Q given by structure constants.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{add_scaled, is_zero_vec, rational_roots, sparse, unit_vec, zero_vec, Echelon, Matrix, Subspace, Vector};
use crate::poly::{is_identifier, VarSpec};
use crate::rational::{int, Rational};

pub type Weight = Vector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("Jacobi identity fails on basis triple ({i}, {j}, {k})")]
    JacobiViolation { i: usize, j: usize, k: usize, residual: Vector },
    #[error("an ad-operator has a characteristic polynomial that does not split over Q")]
    EigenvalueNotRational,
    #[error("no common eigenvector exists")]
    NoneFound,
    #[error("nilradical candidate failed validation; supply it explicitly")]
    NilradicalUndecided,
    #[error("algebra is not solvable")]
    NotSolvable,
    #[error("invalid Lie algebra data: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    basis: Vec<VarSpec>,
    structure: BTreeMap<(usize, usize), Vector>,
}

/// Full flag of ideals with the characters read off along it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanHolderData {
    /// `chain[i]` has dimension `i`; `chain[0]` is zero.
    pub chain: Vec<Subspace>,
    /// `generators[i]` spans `chain[i + 1]` modulo `chain[i]`.
    pub generators: Vec<Vector>,
    pub weights: Vec<Weight>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    Derived,
    LowerCentral,
}

impl LieAlgebra {
    /// Builds and verifies an algebra from brackets `[e_i, e_j]` given for
    /// some ordered pairs; unlisted pairs bracket to zero.
    pub fn new(names: Vec<String>, brackets: impl IntoIterator<Item = ((usize, usize), Vector)>) -> Result<Self, LieError> {
        let g = Self::unchecked(names, brackets)?;
        g.verify()?;
        Ok(g)
    }

    /// Like [`LieAlgebra::new`] but without the Jacobi check.
    pub fn unchecked(names: Vec<String>, brackets: impl IntoIterator<Item = ((usize, usize), Vector)>) -> Result<Self, LieError> {
        let m = names.len();
        for (k, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(LieError::Invalid(format!("bad basis name `{n}`")));
            }
            if names[..k].contains(n) {
                return Err(LieError::Invalid(format!("duplicate basis name `{n}`")));
            }
        }
        let mut structure: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
        for ((i, j), v) in brackets {
            if i >= m || j >= m || v.len() != m {
                return Err(LieError::Invalid(format!("bracket ({i}, {j}) out of range")));
            }
            if i == j {
                if is_zero_vec(&v) {
                    continue;
                }
                return Err(LieError::Invalid(format!("nonzero bracket of e{i} with itself")));
            }
            let (key, v) = if i < j { ((i, j), v) } else { ((j, i), v.iter().map(|x| -x.clone()).collect()) };
            if let Some(prev) = structure.get(&key) {
                if *prev != v {
                    return Err(LieError::Invalid(format!("conflicting bracket ({i}, {j})")));
                }
            }
            if !is_zero_vec(&v) {
                structure.insert(key, v);
            }
        }
        let basis = names.into_iter().map(VarSpec::new).collect();
        Ok(LieAlgebra { basis, structure })
    }

    pub fn from_table(names: &[&str], table: &[(usize, usize, &[(usize, Rational)])]) -> Result<Self, LieError> {
        let m = names.len();
        let brackets = table.iter().map(|(i, j, coeffs)| {
            let mut v = zero_vec(m);
            for (k, c) in coeffs.iter() {
                v[*k] += c;
            }
            ((*i, *j), v)
        });
        Self::new(names.iter().map(|s| s.to_string()).collect(), brackets.collect::<Vec<_>>())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[VarSpec] {
        &self.basis
    }

    pub fn names(&self) -> Vec<String> {
        self.basis.iter().map(|v| v.name.clone()).collect()
    }

    pub fn structure(&self) -> &BTreeMap<(usize, usize), Vector> {
        &self.structure
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        if i < j {
            self.structure.get(&(i, j)).cloned().unwrap_or_else(|| zero_vec(self.dim()))
        } else if i > j {
            self.structure.get(&(j, i)).map(|v| v.iter().map(|x| -x.clone()).collect()).unwrap_or_else(|| zero_vec(self.dim()))
        } else {
            zero_vec(self.dim())
        }
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vector {
        let mut out = zero_vec(self.dim());
        for (&(i, j), c) in &self.structure {
            let coef = &u[i] * &v[j] - &u[j] * &v[i];
            add_scaled(&mut out, c, &coef);
        }
        out
    }

    /// Matrix of `ad x` acting on coordinate columns.
    pub fn ad(&self, x: &[Rational]) -> Matrix {
        let m = self.dim();
        let cols: Vec<Vector> = (0..m).map(|j| self.bracket(x, &unit_vec(m, j))).collect();
        Matrix::from_columns(&cols, m)
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        self.ad(&unit_vec(self.dim(), i))
    }

    /// Jacobi identity on every basis triple.
    pub fn verify(&self) -> Result<(), LieError> {
        let m = self.dim();
        let e = |i| unit_vec(m, i);
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let mut r = self.bracket(&e(i), &self.bracket_basis(j, k));
                    add_scaled(&mut r, &self.bracket(&e(j), &self.bracket_basis(k, i)), &int(1));
                    add_scaled(&mut r, &self.bracket(&e(k), &self.bracket_basis(i, j)), &int(1));
                    if !is_zero_vec(&r) {
                        return Err(LieError::JacobiViolation { i, j, k, residual: r });
                    }
                }
            }
        }
        Ok(())
    }

    /// Span of all brackets `[a, b]` with `a` in `u`, `b` in `v`.
    pub fn bracket_spaces(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let vecs: Vec<Vector> =
            u.basis().iter().flat_map(|a| v.basis().iter().map(move |b| (a, b))).map(|(a, b)| self.bracket(a, b)).collect();
        Subspace::span(self.dim(), vecs)
    }

    pub fn derived_algebra(&self) -> Subspace {
        let full = Subspace::full(self.dim());
        self.bracket_spaces(&full, &full)
    }

    /// Descending series starting at `g`, listed until it stabilizes.
    pub fn series(&self, kind: SeriesKind) -> Vec<Subspace> {
        let full = Subspace::full(self.dim());
        let mut out = vec![full.clone()];
        loop {
            let last = out.last().expect("nonempty");
            let next = match kind {
                SeriesKind::Derived => self.bracket_spaces(last, last),
                SeriesKind::LowerCentral => self.bracket_spaces(&full, last),
            };
            if next == *last {
                return out;
            }
            let done = next.dim() == 0;
            out.push(next);
            if done {
                return out;
            }
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.series(SeriesKind::Derived).last().is_some_and(|s| s.dim() == 0)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.series(SeriesKind::LowerCentral).last().is_some_and(|s| s.dim() == 0)
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        s.contains_subspace(&self.bracket_spaces(s, s))
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.contains_subspace(&self.bracket_spaces(&Subspace::full(self.dim()), s))
    }

    /// Whether the subalgebra `s` is nilpotent as a Lie algebra.
    pub fn is_nilpotent_subalgebra(&self, s: &Subspace) -> bool {
        let mut cur = s.clone();
        for _ in 0..=s.dim() {
            if cur.dim() == 0 {
                return true;
            }
            let next = self.bracket_spaces(s, &cur);
            if next == cur {
                return false;
            }
            cur = next;
        }
        cur.dim() == 0
    }

    pub fn center(&self) -> Subspace {
        let m = self.dim();
        let rows: Vec<Vector> = (0..m).flat_map(|i| self.ad_basis(i).rows).collect();
        Subspace::span(m, crate::linalg::nullspace(&rows, m))
    }

    /// Largest nilpotent ideal, from the span of `[g, g]` and the basis
    /// elements with nilpotent adjoint action, validated afterwards.
    pub fn nilradical(&self) -> Result<Subspace, LieError> {
        if !self.is_solvable() {
            return Err(LieError::NotSolvable);
        }
        let m = self.dim();
        let derived = self.derived_algebra();
        let ad_nil = (0..m).filter(|&i| self.ad_basis(i).is_nilpotent()).map(|i| unit_vec(m, i));
        let cand = derived.sum(&Subspace::span(m, ad_nil));
        let ok = self.is_subalgebra(&cand)
            && self.is_ideal(&cand)
            && self.is_nilpotent_subalgebra(&cand)
            && cand.contains_subspace(&derived)
            && cand.basis().iter().all(|v| self.ad(v).is_nilpotent());
        if ok {
            Ok(cand)
        } else {
            Err(LieError::NilradicalUndecided)
        }
    }

    /// Matrices of `ad e_j` acting on the stable subspace `s`, in the
    /// coordinates of its stored basis.
    pub fn restricted_ad(&self, s: &Subspace) -> Result<Vec<Matrix>, LieError> {
        (0..self.dim())
            .map(|j| {
                let cols = s
                    .basis()
                    .iter()
                    .map(|b| {
                        s.coords(&self.bracket(&unit_vec(self.dim(), j), b))
                            .ok_or_else(|| LieError::Invalid("subspace is not ad-stable".into()))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Matrix::from_columns(&cols, s.dim()))
            })
            .collect()
    }

    /// A nonzero `y` in the stable subspace `s` with `[e_j, y] = λ(e_j) y`
    /// for all basis elements.
    pub fn common_eigenvector(&self, s: &Subspace) -> Result<(Weight, Vector), LieError> {
        let ops = self.restricted_ad(s)?;
        let (w, c) = common_eigenvector_of(&ops, s.dim())?;
        let mut y = zero_vec(self.dim());
        for (a, b) in c.iter().zip(s.basis()) {
            add_scaled(&mut y, b, a);
        }
        Ok((w, y))
    }

    pub fn jordan_holder(&self) -> Result<JordanHolderData, LieError> {
        if !self.is_solvable() {
            return Err(LieError::NotSolvable);
        }
        let m = self.dim();
        let mut chain = vec![Subspace::zero(m)];
        let mut generators = Vec::new();
        let mut weights = Vec::new();
        for _ in 0..m {
            let current = chain.last().expect("nonempty").clone();
            let ech = current.echelon();
            let free: Vec<usize> = (0..m).filter(|c| !ech.pivots.contains(c)).collect();
            let project = |v: Vector| -> Vector {
                let r = ech.reduce(sparse(&v));
                free.iter().map(|c| r.get(c).cloned().unwrap_or_else(Rational::zero)).collect()
            };
            let ops: Vec<Matrix> = (0..m)
                .map(|j| {
                    let cols: Vec<Vector> =
                        free.iter().map(|&c| project(self.bracket(&unit_vec(m, j), &unit_vec(m, c)))).collect();
                    Matrix::from_columns(&cols, free.len())
                })
                .collect();
            let (w, q) = common_eigenvector_of(&ops, free.len())?;
            let mut y = zero_vec(m);
            for (&c, a) in free.iter().zip(&q) {
                y[c] = a.clone();
            }
            chain.push(current.sum(&Subspace::span(m, [y.clone()])));
            generators.push(y);
            weights.push(w);
        }
        Ok(JordanHolderData { chain, generators, weights })
    }

    /// Direct sum; names must be disjoint.
    pub fn direct_sum(&self, other: &LieAlgebra) -> Result<LieAlgebra, LieError> {
        let m = self.dim();
        let n = m + other.dim();
        let mut names = self.names();
        names.extend(other.names());
        let mut br = Vec::new();
        for (&(i, j), v) in &self.structure {
            let mut w = v.clone();
            w.resize(n, Rational::zero());
            br.push(((i, j), w));
        }
        for (&(i, j), v) in &other.structure {
            let mut w = zero_vec(m);
            w.extend(v.iter().cloned());
            br.push(((i + m, j + m), w));
        }
        LieAlgebra::new(names, br)
    }

    pub fn renamed(&self, names: &[&str]) -> Result<LieAlgebra, LieError> {
        LieAlgebra::new(names.iter().map(|s| s.to_string()).collect(), self.structure.clone())
    }

    pub fn abelian(dim: usize) -> LieAlgebra {
        let names = (1..=dim).map(|i| format!("a{i}")).collect();
        LieAlgebra::new(names, []).expect("abelian")
    }

    /// Heisenberg algebra with basis `x_1..x_n, y_1..y_n, z` and
    /// `[x_i, y_i] = z`; for `n = 1` the names are `x, y, z`.
    pub fn heisenberg(n: usize) -> LieAlgebra {
        let names: Vec<String> = if n == 1 {
            vec!["x".into(), "y".into(), "z".into()]
        } else {
            (1..=n).map(|i| format!("x{i}")).chain((1..=n).map(|i| format!("y{i}"))).chain(["z".to_string()]).collect()
        };
        let m = 2 * n + 1;
        let br = (0..n).map(|i| ((i, n + i), unit_vec(m, 2 * n)));
        LieAlgebra::new(names, br.collect::<Vec<_>>()).expect("heisenberg")
    }

    /// Two-dimensional non-abelian algebra `[x, y] = y`.
    pub fn aff2() -> LieAlgebra {
        LieAlgebra::new(vec!["x".into(), "y".into()], [((0, 1), unit_vec(2, 1))]).expect("aff2")
    }

    /// Four-dimensional filiform algebra `[e1, e2] = e3`, `[e1, e3] = e4`.
    pub fn eng4() -> LieAlgebra {
        let names = (1..=4).map(|i| format!("e{i}")).collect();
        LieAlgebra::new(names, [((0, 1), unit_vec(4, 2)), ((0, 2), unit_vec(4, 3))]).expect("eng4")
    }

    /// `[x, y] = z`, `[x, z] = -y`: solvable with irrational weights.
    pub fn rotation() -> LieAlgebra {
        let minus_y = vec![int(0), int(-1), int(0)];
        let names = vec!["x".into(), "y".into(), "z".into()];
        LieAlgebra::new(names, [((0, 1), unit_vec(3, 2)), ((0, 2), minus_y)]).expect("rotation")
    }
}

/// Common eigenvector of a family of square matrices of size `n`, with the
/// eigenvalue of each. Candidate eigenvalues are the rational roots of each
/// characteristic polynomial, tried in increasing order; when the common
/// eigenspace has several dimensions the last basis vector is returned.
pub fn common_eigenvector_of(ops: &[Matrix], n: usize) -> Result<(Vector, Vector), LieError> {
    if n == 0 {
        return Err(LieError::NoneFound);
    }
    let mut split_all = true;
    let mut candidates = Vec::new();
    for op in ops {
        let (roots, split) = rational_roots(&op.char_poly());
        split_all &= split;
        candidates.push(roots.into_iter().map(|(r, _)| r).collect::<Vec<_>>());
    }
    let mut chosen = Vec::new();
    match search(ops, &candidates, n, &mut chosen, Echelon::new(n)) {
        Some(v) => Ok((chosen, v)),
        None if split_all => Err(LieError::NoneFound),
        None => Err(LieError::EigenvalueNotRational),
    }
}

fn search(
    ops: &[Matrix],
    candidates: &[Vec<Rational>],
    n: usize,
    chosen: &mut Vec<Rational>,
    constraints: Echelon,
) -> Option<Vector> {
    let k = chosen.len();
    if k == ops.len() {
        return constraints.nullspace().pop();
    }
    if ops[k].is_zero() {
        chosen.push(Rational::zero());
        if let Some(v) = search(ops, candidates, n, chosen, constraints) {
            return Some(v);
        }
        chosen.pop();
        return None;
    }
    for mu in &candidates[k] {
        let mut e = constraints.clone();
        for row in &ops[k].sub_scalar(mu).rows {
            e.insert(sparse(row));
        }
        if e.rank() == n {
            continue;
        }
        chosen.push(mu.clone());
        if let Some(v) = search(ops, candidates, n, chosen, e) {
            return Some(v);
        }
        chosen.pop();
    }
    None
}

/// Whether `w` is a nonnegative integer combination of `gens` (exact search
/// bounded by `max_total`).
pub fn in_nat_span(w: &[Rational], gens: &[Weight], max_total: usize) -> bool {
    fn go(rest: Vector, gens: &[Weight], from: usize, budget: usize) -> bool {
        if is_zero_vec(&rest) {
            return true;
        }
        if budget == 0 {
            return false;
        }
        (from..gens.len()).any(|i| {
            if is_zero_vec(&gens[i]) {
                return false;
            }
            let mut r = rest.clone();
            add_scaled(&mut r, &gens[i], &int(-1));
            go(r, gens, i, budget - 1)
        })
    }
    go(w.to_vec(), gens, 0, max_total)
}

/// Basis vector sum helper used by fixtures and tests.
pub fn combo(dim: usize, terms: &[(usize, i64)]) -> Vector {
    let mut v = zero_vec(dim);
    for &(i, c) in terms {
        v[i] += int(c);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_violation_reports_residual() {
        // [x,y]=x, [y,z]=y, [z,x]=z
        let br = vec![((0, 1), combo(3, &[(0, 1)])), ((1, 2), combo(3, &[(1, 1)])), ((2, 0), combo(3, &[(2, 1)]))];
        let err = LieAlgebra::new(vec!["x".into(), "y".into(), "z".into()], br).unwrap_err();
        match err {
            LieError::JacobiViolation { residual, .. } => {
                let p = crate::linalg::primitive(&residual);
                assert_eq!(p, combo(3, &[(0, 1), (1, 1), (2, 1)]));
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn series_flags() {
        let h = LieAlgebra::heisenberg(1);
        assert!(h.is_nilpotent());
        let lc = h.series(SeriesKind::LowerCentral);
        assert_eq!(lc.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![3, 1, 0]);
        let a = LieAlgebra::aff2();
        assert!(a.is_solvable() && !a.is_nilpotent());
        assert_eq!(a.series(SeriesKind::LowerCentral).last().unwrap().dim(), 1);
        let ab = LieAlgebra::abelian(3);
        assert!(ab.is_solvable() && ab.is_nilpotent());
    }

    #[test]
    fn nilradicals() {
        assert_eq!(LieAlgebra::aff2().nilradical().unwrap(), Subspace::span(2, [unit_vec(2, 1)]));
        let e = LieAlgebra::eng4();
        assert_eq!(e.nilradical().unwrap(), Subspace::full(4));
        let ha = LieAlgebra::heisenberg(1).direct_sum(&LieAlgebra::aff2().renamed(&["s", "t"]).unwrap()).unwrap();
        let expected = Subspace::span(5, [1usize, 2, 0, 4].map(|i| unit_vec(5, i)));
        assert_eq!(ha.nilradical().unwrap(), expected);
    }

    #[test]
    fn jordan_holder_examples() {
        let a = LieAlgebra::aff2();
        let jh = a.jordan_holder().unwrap();
        assert_eq!(jh.chain[1], Subspace::span(2, [unit_vec(2, 1)]));
        assert_eq!(jh.weights, vec![vec![int(1), int(0)], vec![int(0), int(0)]]);
        let h = LieAlgebra::heisenberg(1).jordan_holder().unwrap();
        assert_eq!(h.generators, vec![unit_vec(3, 2), unit_vec(3, 1), unit_vec(3, 0)]);
        assert!(h.weights.iter().all(|w| is_zero_vec(w)));
        assert_eq!(LieAlgebra::rotation().jordan_holder(), Err(LieError::EigenvalueNotRational));
    }

    #[test]
    fn common_eigenvectors() {
        let a = LieAlgebra::aff2();
        let (w, y) = a.common_eigenvector(&Subspace::full(2)).unwrap();
        assert_eq!(y, unit_vec(2, 1));
        assert_eq!(w[0], int(1));
        let h = LieAlgebra::heisenberg(1);
        let (w, y) = h.common_eigenvector(&h.center()).unwrap();
        assert_eq!(y, unit_vec(3, 2));
        assert!(is_zero_vec(&w));
        let (w, _) = LieAlgebra::abelian(2).common_eigenvector(&Subspace::full(2)).unwrap();
        assert!(is_zero_vec(&w));
    }

    #[test]
    fn nat_span() {
        let gens = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        assert!(in_nat_span(&[int(2), int(1)], &gens, 3));
        assert!(!in_nat_span(&[int(-1), int(0)], &gens, 3));
    }
}
