//! Degree-bounded searches for central and semi-invariant elements of
//! `B(Q, g) = S(g)/Q` and the subalgebra cut out by their weights.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::lie::{JordanHolderData, LieAlgebra, LieError, Weight};
use crate::linalg::{add_scaled, is_zero_vec, nullspace, unit_vec, Subspace, Vector};
use crate::poisson::{linear_form, Derivation, PoissonAlgebra, PoissonError, SubstitutionIdeal};
use crate::poly::{Monomial, Poly, VarSpec};
use crate::rational::{int, Rational};
use crate::span;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Poisson(#[from] PoissonError),
    #[error("the ideal eliminates complement variable `{0}`")]
    ComplementEliminated(String),
    #[error("non-coordinate subalgebra with a nonzero ideal is not supported")]
    Unsupported,
    #[error("rebuilt presentation disagrees on generators ({0}, {1})")]
    PresentationMismatch(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiInvariantReport {
    pub bound: u32,
    /// `(λ, basis of the weight-λ space in degree ≤ bound)`, nonzero spaces
    /// only, ordered by weight.
    pub entries: Vec<(Weight, Vec<Poly>)>,
}

impl SemiInvariantReport {
    pub fn weights(&self) -> Vec<Weight> {
        self.entries.iter().map(|(w, _)| w.clone()).collect()
    }

    pub fn space(&self, w: &[Rational]) -> Option<&[Poly]> {
        self.entries.iter().find(|(v, _)| v.as_slice() == w).map(|(_, b)| b.as_slice())
    }

    /// Whether every reported weight is zero.
    pub fn only_weight_zero(&self) -> bool {
        self.entries.iter().all(|(w, _)| is_zero_vec(w))
    }
}

/// `B(Q, g)` as a Poisson algebra on the basis of `g`.
pub fn algebra_of(g: &LieAlgebra, q: &SubstitutionIdeal) -> Result<PoissonAlgebra, PoissonError> {
    let a = PoissonAlgebra::canonical_from_lie(g);
    if q.is_empty() {
        Ok(a)
    } else {
        a.quotient(q)
    }
}

/// Candidate weights `Σ ν_i λ_i` with `|ν| ≤ d`, deduplicated and sorted.
pub fn candidate_weights(jh: &JordanHolderData, d: u32, dim: usize) -> Vec<Weight> {
    let mut distinct: Vec<Weight> = Vec::new();
    for w in &jh.weights {
        if !distinct.contains(w) {
            distinct.push(w.clone());
        }
    }
    let mut layer: Vec<Weight> = vec![vec![Rational::zero(); dim]];
    let mut all = layer.clone();
    for _ in 0..d {
        let mut next = Vec::new();
        for w in &layer {
            for l in &distinct {
                let mut s = w.clone();
                add_scaled(&mut s, l, &int(1));
                if !all.contains(&s) && !next.contains(&s) {
                    next.push(s);
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all.sort();
    all
}

fn homogeneous_linear(a: &PoissonAlgebra) -> Option<i64> {
    if !a.ideal().is_empty() || !a.inverted().is_empty() {
        return None;
    }
    let mut deg = None;
    for p in a.table().values() {
        let (lo, hi) = (p.min_degree()?, p.degree()?);
        if lo != hi || deg.is_some_and(|d| d != lo) {
            return None;
        }
        deg = Some(lo);
    }
    Some(deg.unwrap_or(1))
}

/// Degree-sliced domains: one slice when the search may not split by degree.
fn domains(a: &PoissonAlgebra, d: u32) -> Vec<Vec<Monomial>> {
    let gens = a.generators();
    let all = PoissonAlgebra::monomials_up_to(&gens, d);
    if homogeneous_linear(a).is_some() {
        let mut by_deg: BTreeMap<i64, Vec<Monomial>> = BTreeMap::new();
        for m in all {
            by_deg.entry(m.degree()).or_default().push(m);
        }
        by_deg.into_values().collect()
    } else {
        vec![all]
    }
}

/// Basis of `{p : deg p ≤ d, {v, p} = 0 for every generator v}`.
pub fn center_up_to_degree(a: &PoissonAlgebra, d: u32) -> Vec<Poly> {
    let gens = a.generators();
    let maps = |m: &Monomial| -> Vec<Poly> {
        let p = Poly::term(m.clone(), Rational::from_integer(1.into()));
        gens.iter().map(|&v| a.bracket_poly(&Poly::var(v), &p)).collect()
    };
    let mut out = Vec::new();
    for dom in domains(a, d) {
        out.extend(span::kernel(&dom, &maps));
    }
    span::reduced_basis(&out)
}

/// Basis of the weight-`λ` semi-invariants of degree ≤ `d` for the
/// derivations `eps[j]` (one per basis element of `g`).
pub fn weight_space(a: &PoissonAlgebra, eps: &[Vec<Poly>], weight: &[Rational], d: u32) -> Vec<Poly> {
    let maps = |m: &Monomial| -> Vec<Poly> {
        let p = Poly::term(m.clone(), Rational::from_integer(1.into()));
        eps.iter().zip(weight).map(|(images, l)| &a.apply_plain(images, &p) - &p.scale(l)).collect()
    };
    let mut out = Vec::new();
    for dom in domains(a, d) {
        out.extend(span::kernel(&dom, &maps));
    }
    span::reduced_basis(&out)
}

/// Images of the generators under `ε(x_j)` for each basis element `x_j`.
pub fn epsilon_images(g: &LieAlgebra, a: &PoissonAlgebra) -> Vec<Vec<Poly>> {
    (0..g.dim())
        .map(|j| {
            let d: Derivation = a.epsilon_derivation(&unit_vec(g.dim(), j));
            d.poly_images().expect("canonical brackets are polynomial")
        })
        .collect()
}

pub fn semi_invariants(g: &LieAlgebra, q: &SubstitutionIdeal, d: u32) -> Result<SemiInvariantReport, SearchError> {
    let jh = g.jordan_holder()?;
    let a = algebra_of(g, q)?;
    let eps = epsilon_images(g, &a);
    let mut entries = Vec::new();
    for w in candidate_weights(&jh, d, g.dim()) {
        let basis = weight_space(&a, &eps, &w, d);
        if !basis.is_empty() {
            entries.push((w, basis));
        }
    }
    Ok(SemiInvariantReport { bound: d, entries })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GhatData {
    pub bound: u32,
    pub subalgebra: Subspace,
    /// Indices of the standard basis vectors completing `subalgebra`.
    pub complement: Vec<usize>,
    /// The ideal restricted to the subalgebra's variables, indexed by the
    /// subalgebra's own basis order.
    pub qhat: SubstitutionIdeal,
    pub weights: Vec<Weight>,
}

impl GhatData {
    /// Whether the subalgebra is spanned by standard basis vectors; returns
    /// their indices.
    pub fn coordinate_indices(&self) -> Option<Vec<usize>> {
        self.subalgebra
            .basis()
            .iter()
            .map(|v| {
                let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
                (nz.len() == 1).then(|| nz[0])
            })
            .collect()
    }
}

pub fn ghat(g: &LieAlgebra, q: &SubstitutionIdeal, d: u32) -> Result<GhatData, SearchError> {
    let report = semi_invariants(g, q, d)?;
    let weights: Vec<Weight> = report.weights().into_iter().filter(|w| !is_zero_vec(w)).collect();
    let m = g.dim();
    let sub = Subspace::span(m, nullspace(&weights, m));
    let complement = sub.complement_indices();
    let mut data = GhatData { bound: d, subalgebra: sub, complement, qhat: SubstitutionIdeal::default(), weights };
    if !q.is_empty() {
        let coords = data.coordinate_indices().ok_or(SearchError::Unsupported)?;
        let pos: BTreeMap<usize, usize> = coords.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut rules = BTreeMap::new();
        for (&v, img) in &q.rules {
            if let Some(&k) = pos.get(&v) {
                if img.vars().iter().all(|w| pos.contains_key(w)) {
                    rules.insert(k, img.map_vars(|w| pos[&w]));
                }
            }
        }
        data.qhat = SubstitutionIdeal { rules };
    }
    Ok(data)
}

/// `B(Q, g)` rebuilt as iterated skew extensions of `B(Q̂, ĝ)`.
#[derive(Debug, Clone)]
pub struct GhatPresentation {
    pub ghat: GhatData,
    /// `B(Q̂, ĝ)` on the basis of the subalgebra.
    pub base: PoissonAlgebra,
    /// `δ_i` on the algebra built so far, one per complement element.
    pub derivations: Vec<Derivation>,
    pub rebuilt: PoissonAlgebra,
    /// Image of each variable of `rebuilt` as a polynomial in the basis of `g`.
    pub identification: Vec<Poly>,
}

pub fn present_over_ghat(g: &LieAlgebra, q: &SubstitutionIdeal, d: u32) -> Result<GhatPresentation, SearchError> {
    let gh = ghat(g, q, d)?;
    for &c in &gh.complement {
        if q.eliminates(c) {
            return Err(SearchError::ComplementEliminated(g.basis()[c].name.clone()));
        }
    }
    let m = g.dim();
    let hb: Vec<Vector> = gh.subalgebra.basis().to_vec();
    let coords = gh.coordinate_indices();
    let names: Vec<String> = match &coords {
        Some(ix) => ix.iter().map(|&i| g.basis()[i].name.clone()).collect(),
        None => fresh_names(g, hb.len()),
    };
    let mut brackets = Vec::new();
    for a in 0..hb.len() {
        for b in a + 1..hb.len() {
            let c = gh.subalgebra.coords(&g.bracket(&hb[a], &hb[b])).expect("subalgebra is closed");
            brackets.push(((a, b), c));
        }
    }
    let h = LieAlgebra::new(names, brackets)?;
    let base = algebra_of(&h, &gh.qhat)?;
    let full = algebra_of(g, q)?;

    // New basis of g: subalgebra basis then complement vectors; express the
    // old coordinates through it to pull brackets back.
    let mut identification: Vec<Poly> = hb.iter().map(|v| linear_form(v)).collect();
    let mut change: Vec<Vector> = hb.clone();
    change.extend(gh.complement.iter().map(|&c| unit_vec(m, c)));
    let cols = crate::linalg::Matrix::from_columns(&change, m);
    let old_in_new: Vec<Poly> = (0..m)
        .map(|i| {
            let x = crate::linalg::solve(&cols.rows, &unit_vec(m, i)).expect("basis change is invertible");
            linear_form(&x)
        })
        .collect();
    let mut current = base.clone();
    let mut derivations = Vec::new();
    for (step, &c) in gh.complement.iter().enumerate() {
        let x = Poly::var(c);
        let images: Vec<Poly> = identification
            .iter()
            .map(|img| {
                let b = full.bracket_poly(&x, img);
                pull_back(&b, &old_in_new, current.vars())
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| SearchError::PresentationMismatch(g.basis()[c].name.clone(), "*".into()))?;
        let delta = Derivation::from_polys(images);
        let name = g.basis()[c].name.clone();
        let name = if current.var(&name).is_some() { format!("X{}", step + 1) } else { name };
        current = current.skew_extend(&delta, &name)?;
        derivations.push(delta);
        identification.push(x);
    }
    for i in 0..current.nvars() {
        for j in i + 1..current.nvars() {
            let lhs = full.nf(&current.bracket_poly(&Poly::var(i), &Poly::var(j)).compose(&identification, current.vars()));
            let rhs = full.bracket_poly(&identification[i], &identification[j]);
            if lhs != rhs {
                return Err(SearchError::PresentationMismatch(current.vars()[i].name.clone(), current.vars()[j].name.clone()));
            }
        }
    }
    Ok(GhatPresentation { ghat: gh, base, derivations, rebuilt: current, identification })
}

/// Rewrites `p` (in the basis of `g`) in the variables of the partial
/// presentation, or `None` if it leaves them.
fn pull_back(p: &Poly, old_in_new: &[Poly], target: &[VarSpec]) -> Option<Poly> {
    let q = p.compose(old_in_new, &[]);
    q.vars().iter().all(|&v| v < target.len()).then_some(q)
}

fn fresh_names(g: &LieAlgebra, k: usize) -> Vec<String> {
    let taken = g.names();
    let mut out = Vec::new();
    let mut i = 1;
    while out.len() < k {
        let n = format!("u{i}");
        if !taken.contains(&n) {
            out.push(n);
        }
        i += 1;
    }
    out
}
