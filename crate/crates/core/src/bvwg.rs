//! The family `𝓑(V, ω, G)`: `S(V) ⊗ 𝕜[G]` with `{v, w} = ω(v, w)`,
//! `{g, h} = 0` and `{g, v} = λ_g(v) g`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::lie::{LieAlgebra, LieError};
use crate::linalg::{self, unit_vec, zero_vec, Echelon, Subspace, Vector};
use crate::poisson::{linear_form, PoissonAlgebra, PoissonError, SubstitutionIdeal};
use crate::poly::{is_identifier, Monomial, Poly, VarSpec};
use crate::rational::Rational;
use crate::span;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BvwgError {
    #[error("invalid specification: {0}")]
    Invalid(String),
    #[error("not simple: V^G and V^omega meet in dimension {}", .certificate.len())]
    NotSimple { certificate: Vec<Vector> },
    #[error("condition ({condition}) fails: {witness}")]
    ConditionFailed { condition: &'static str, witness: String },
    #[error(transparent)]
    Poisson(#[from] PoissonError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// `n = dim V`, an antisymmetric form `omega` and the weights `λ_{g_i}` of
/// the free generators `g_i` of `G` as rows of `weights`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BvwgSpec {
    pub v_names: Vec<String>,
    pub omega: Vec<Vector>,
    pub g_names: Vec<String>,
    pub weights: Vec<Vector>,
}

impl BvwgSpec {
    pub fn new(v_names: Vec<String>, omega: Vec<Vector>, g_names: Vec<String>, weights: Vec<Vector>) -> Result<Self, BvwgError> {
        let s = BvwgSpec { v_names, omega, g_names, weights };
        s.validate()?;
        Ok(s)
    }

    /// Default names `v1..vn`, `g1..gp`.
    pub fn from_ints(omega: &[Vec<i64>], weights: &[Vec<i64>]) -> Result<Self, BvwgError> {
        let n = omega.len();
        let conv =
            |rows: &[Vec<i64>]| rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect();
        Self::new(
            (1..=n).map(|i| format!("v{i}")).collect(),
            conv(omega),
            (1..=weights.len()).map(|i| format!("g{i}")).collect(),
            conv(weights),
        )
    }

    pub fn n(&self) -> usize {
        self.v_names.len()
    }

    pub fn p(&self) -> usize {
        self.g_names.len()
    }

    pub fn validate(&self) -> Result<(), BvwgError> {
        let (n, p) = (self.n(), self.p());
        let names: Vec<&String> = self.v_names.iter().chain(&self.g_names).collect();
        for (k, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(BvwgError::Invalid(format!("bad name `{name}`")));
            }
            if names[..k].contains(name) {
                return Err(BvwgError::Invalid(format!("duplicate name `{name}`")));
            }
        }
        if self.omega.len() != n || self.omega.iter().any(|r| r.len() != n) {
            return Err(BvwgError::Invalid("omega must be n x n".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if self.omega[i][j] != -&self.omega[j][i] {
                    return Err(BvwgError::Invalid(format!("omega not antisymmetric at ({i}, {j})")));
                }
            }
        }
        if self.weights.len() != p || self.weights.iter().any(|r| r.len() != n) {
            return Err(BvwgError::Invalid("weights must be p x n".into()));
        }
        Ok(())
    }

    pub fn vars(&self) -> Vec<VarSpec> {
        let vs = self.v_names.iter().map(VarSpec::new);
        vs.chain(self.g_names.iter().map(VarSpec::unit)).collect()
    }

    pub fn g_var(&self, k: usize) -> usize {
        self.n() + k
    }

    /// `λ_g` for the lattice element `Π g_k^{m_k}`.
    pub fn weight_of(&self, g: &[i64]) -> Vector {
        let mut out = zero_vec(self.n());
        for (k, &m) in g.iter().enumerate() {
            linalg::add_scaled(&mut out, &self.weights[k], &Rational::from_integer(m.into()));
        }
        out
    }

    /// `ω(u, v)` for coordinate vectors.
    pub fn form(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                s += ui * &self.omega[i][j] * vj;
            }
        }
        s
    }

    /// `V^ω`.
    pub fn omega_kernel(&self) -> Subspace {
        Subspace::span(self.n(), linalg::nullspace(&self.omega, self.n()))
    }

    /// `V^G`.
    pub fn lattice_kernel(&self) -> Subspace {
        Subspace::span(self.n(), linalg::nullspace(&self.weights, self.n()))
    }
}

pub fn build(spec: &BvwgSpec) -> PoissonAlgebra {
    let n = spec.n();
    let mut table = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            table.push(((i, j), Poly::constant(spec.omega[i][j].clone())));
        }
    }
    for (k, w) in spec.weights.iter().enumerate() {
        let g = spec.g_var(k);
        for (i, c) in w.iter().enumerate() {
            table.push(((g, i), Poly::var(g).scale(c)));
        }
    }
    let a = PoissonAlgebra::unchecked(spec.vars(), table).expect("validated names");
    debug_assert!(a.jacobi_check().is_ok());
    a
}

/// Ring map out of `build(spec)` given by images of the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BvwgHom {
    pub images: Vec<Poly>,
}

impl BvwgHom {
    pub fn apply(&self, target: &PoissonAlgebra, p: &Poly) -> Poly {
        target.nf(&p.compose(&self.images, target.vars()))
    }
}

/// Checks the three bracket conditions on `chi` (images of `V`) and `psi`
/// (images of the lattice generators) and returns the induced map.
pub fn universal_hom(spec: &BvwgSpec, target: &PoissonAlgebra, chi: &[Poly], psi: &[Poly]) -> Result<BvwgHom, BvwgError> {
    let fail = |condition, witness: String| Err(BvwgError::ConditionFailed { condition, witness });
    let (n, p) = (spec.n(), spec.p());
    if chi.len() != n || psi.len() != p {
        return Err(BvwgError::Invalid("wrong number of images".into()));
    }
    for (i, a) in chi.iter().enumerate() {
        for (j, b) in chi.iter().enumerate().skip(i + 1) {
            let got = target.bracket_poly(a, b);
            if got != Poly::constant(spec.omega[i][j].clone()) {
                return fail("i", format!("{{{}, {}}} = {}", spec.v_names[i], spec.v_names[j], target.show(&got)));
            }
        }
    }
    for (k, g) in psi.iter().enumerate() {
        if g.unit_inverse(target.vars()).is_none() {
            return fail("ii", format!("image of `{}` is not a unit", spec.g_names[k]));
        }
        for (i, a) in chi.iter().enumerate() {
            let got = target.bracket_poly(g, a);
            if got != target.nf(&g.scale(&spec.weights[k][i])) {
                return fail("ii", format!("{{{}, {}}} = {}", spec.g_names[k], spec.v_names[i], target.show(&got)));
            }
        }
        for (l, h) in psi.iter().enumerate().skip(k + 1) {
            if !target.bracket_poly(g, h).is_zero() {
                return fail("iii", format!("{{{}, {}}} != 0", spec.g_names[k], spec.g_names[l]));
            }
        }
    }
    Ok(BvwgHom { images: chi.iter().chain(psi).cloned().collect() })
}

/// `exp D_{λ_g}` on `S(V)`: `v ↦ v + λ_g(v)`.
pub fn phi_g(spec: &BvwgSpec, g: &[i64], r: &Poly) -> Poly {
    let lam = spec.weight_of(g);
    let bindings: BTreeMap<usize, Poly> = (0..spec.n()).map(|i| (i, &Poly::var(i) + &Poly::constant(lam[i].clone()))).collect();
    r.substitute_unchecked(&bindings, &spec.vars())
}

/// The lattice element `Π g_k^{m_k}` as a Laurent monomial.
pub fn lattice_element(spec: &BvwgSpec, g: &[i64]) -> Poly {
    let m = Monomial::from_pairs(g.iter().enumerate().filter(|(_, &e)| e != 0).map(|(k, &e)| (spec.g_var(k), e as i32)));
    Poly::term(m, Rational::one())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplicity {
    pub simple: bool,
    /// Basis of `V^G ∩ V^ω`.
    pub certificate: Vec<Vector>,
}

pub fn is_simple(spec: &BvwgSpec) -> Simplicity {
    let meet = spec.omega_kernel().intersection(&spec.lattice_kernel());
    Simplicity { simple: meet.dim() == 0, certificate: meet.basis().to_vec() }
}

fn require_simple(spec: &BvwgSpec) -> Result<(), BvwgError> {
    let s = is_simple(spec);
    if s.simple {
        Ok(())
    } else {
        Err(BvwgError::NotSimple { certificate: s.certificate })
    }
}

/// `S_ω(W) ⊗ 𝕜[G]` for a subspace `W` of `V`, with `ω` restricted to the
/// given basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubPresentation {
    pub v_basis: Vec<Vector>,
    pub omega: Vec<Vector>,
    pub g_names: Vec<String>,
}

impl SubPresentation {
    fn restrict(spec: &BvwgSpec, w: &Subspace) -> Self {
        let b = w.basis().to_vec();
        let omega = b.iter().map(|u| b.iter().map(|v| spec.form(u, v)).collect()).collect();
        SubPresentation { v_basis: b, omega, g_names: spec.g_names.clone() }
    }

    pub fn dim(&self) -> usize {
        self.v_basis.len()
    }

    /// Generators as elements of `build(spec)`.
    pub fn generators(&self, spec: &BvwgSpec) -> Vec<Poly> {
        let vs = self.v_basis.iter().map(|v| linear_form(v));
        vs.chain((0..spec.p()).map(|k| Poly::var(spec.g_var(k)))).collect()
    }
}

/// `(C, D)` on `V^G` and on `V^{Gω}`, the kernel of `ω` restricted to `V^G`.
pub fn centralizer_center(spec: &BvwgSpec) -> Result<(SubPresentation, SubPresentation), BvwgError> {
    require_simple(spec)?;
    let vg = spec.lattice_kernel();
    let c = SubPresentation::restrict(spec, &vg);
    let k = linalg::nullspace(&c.omega, c.dim());
    let vgw = Subspace::span(
        spec.n(),
        k.iter().map(|x| {
            let mut v = zero_vec(spec.n());
            for (a, b) in c.v_basis.iter().enumerate() {
                linalg::add_scaled(&mut v, b, &x[a]);
            }
            v
        }),
    );
    Ok((c, SubPresentation::restrict(spec, &vgw)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BvwgInvariants {
    pub gk_total: usize,
    pub rank_g: usize,
    pub gk_centralizer: usize,
    pub gk_center: usize,
}

pub fn invariants(spec: &BvwgSpec) -> BvwgInvariants {
    let vg = spec.lattice_kernel();
    let c = SubPresentation::restrict(spec, &vg);
    let center = linalg::nullspace(&c.omega, c.dim()).len();
    let p = spec.p();
    BvwgInvariants { gk_total: spec.n() + p, rank_g: p, gk_centralizer: vg.dim() + p, gk_center: center + p }
}

/// Number of monomials with `V`-degree at most `d` and every group exponent
/// in `[-d, d]`.
pub fn monomial_count(n: usize, p: usize, d: u32) -> f64 {
    let v = PoissonAlgebra::monomials_up_to(&(0..n).collect::<Vec<_>>(), d).len() as f64;
    v * f64::from(2 * d + 1).powi(p as i32)
}

fn half_range_slope(count: impl Fn(u32) -> f64, dmax: u32) -> f64 {
    let lo = (dmax / 2).max(1);
    (count(dmax).ln() - count(lo).ln()) / (f64::from(dmax).ln() - f64::from(lo).ln())
}

/// Log-log slope of the monomial count between `dmax/2` and `dmax`, a
/// surrogate for the growth dimension.
pub fn growth_exponent(spec: &BvwgSpec, dmax: u32) -> f64 {
    half_range_slope(|d| monomial_count(spec.n(), spec.p(), d), dmax)
}

/// The same slope for the group algebra `𝕜[G]` alone.
pub fn group_growth_exponent(spec: &BvwgSpec, dmax: u32) -> f64 {
    half_range_slope(|d| monomial_count(0, spec.p(), d), dmax)
}

/// Basis `x_1..x_l, y_1..y_l, s_1..s_t` of `V` with `ω(x_i, y_j) = δ_ij`
/// and all other pairings zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticBasis {
    pub x: Vec<Vector>,
    pub y: Vec<Vector>,
    pub s: Vec<Vector>,
}

impl SymplecticBasis {
    pub fn all(&self) -> Vec<Vector> {
        self.x.iter().chain(&self.y).chain(&self.s).cloned().collect()
    }

    /// `coords[a]` expresses the basis vector `v_a` in this basis.
    pub fn coordinates(&self) -> Vec<Vector> {
        let all = self.all();
        let n = all.len();
        let rows: Vec<Vector> = (0..n).map(|i| all.iter().map(|b| b[i].clone()).collect()).collect();
        (0..n).map(|a| linalg::solve(&rows, &unit_vec(n, a)).expect("basis")).collect()
    }
}

/// Skew normal form by congruence; pivot pairs are taken at the smallest
/// indices available.
pub fn symplectic_basis(spec: &BvwgSpec) -> SymplecticBasis {
    let n = spec.n();
    let mut rest: Vec<Vector> = (0..n).map(|i| unit_vec(n, i)).collect();
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    loop {
        let pivot = (0..rest.len())
            .flat_map(|i| (i + 1..rest.len()).map(move |j| (i, j)))
            .find(|&(i, j)| !spec.form(&rest[i], &rest[j]).is_zero());
        let Some((i, j)) = pivot else { break };
        let c = spec.form(&rest[i], &rest[j]);
        let x = rest[i].clone();
        let y = linalg::scale_vec(&rest[j], &c.recip());
        rest.remove(j);
        rest.remove(i);
        for b in &mut rest {
            let (bx, by) = (spec.form(b, &x), spec.form(b, &y));
            linalg::add_scaled(b, &x, &-by);
            linalg::add_scaled(b, &y, &bx);
        }
        xs.push(x);
        ys.push(y);
    }
    SymplecticBasis { x: xs, y: ys, s: rest }
}

#[derive(Debug, Clone)]
pub struct WeylEmbedding {
    pub l: usize,
    pub m: usize,
    pub basis: SymplecticBasis,
    /// `B_l ⊗ B'_m` on `X_i, Y_i, T_j, Z_j` with `Z_j` invertible.
    pub target: PoissonAlgebra,
    pub hom: BvwgHom,
}

/// `χ(x_i) = X_i + Σ λ_j(x_i) Z_j T_j`, `χ(y_i) = Y_i + …`,
/// `χ(s_k) = Σ λ_j(s_k) Z_j T_j` and `ψ(g_j) = Z_j`.
pub fn embed_in_weyl(spec: &BvwgSpec) -> Result<WeylEmbedding, BvwgError> {
    require_simple(spec)?;
    let basis = symplectic_basis(spec);
    let (l, m) = (basis.x.len(), spec.p());
    let mut vars: Vec<VarSpec> = Vec::new();
    vars.extend((1..=l).map(|i| VarSpec::new(format!("X{i}"))));
    vars.extend((1..=l).map(|i| VarSpec::new(format!("Y{i}"))));
    vars.extend((1..=m).map(|j| VarSpec::new(format!("T{j}"))));
    vars.extend((1..=m).map(|j| VarSpec::unit(format!("Z{j}"))));
    let (t0, z0) = (2 * l, 2 * l + m);
    let mut table: Vec<((usize, usize), Poly)> = (0..l).map(|i| ((i, l + i), Poly::one())).collect();
    table.extend((0..m).map(|j| ((z0 + j, t0 + j), Poly::one())));
    let target = PoissonAlgebra::new(vars, table)?;
    let drift = |b: &Vector| -> Poly {
        let mut out = Poly::zero();
        for (j, w) in spec.weights.iter().enumerate() {
            let c = linalg_dot(w, b);
            out += &(&Poly::var(z0 + j) * &Poly::var(t0 + j)).scale(&c);
        }
        out
    };
    let mut images: Vec<Poly> = Vec::new();
    for (i, b) in basis.x.iter().enumerate() {
        images.push(&Poly::var(i) + &drift(b));
    }
    for (i, b) in basis.y.iter().enumerate() {
        images.push(&Poly::var(l + i) + &drift(b));
    }
    for b in &basis.s {
        images.push(drift(b));
    }
    let chi: Vec<Poly> = basis.coordinates().iter().map(|c| c.iter().zip(&images).map(|(k, img)| img.scale(k)).sum()).collect();
    let psi: Vec<Poly> = (0..m).map(|j| Poly::var(z0 + j)).collect();
    let hom = universal_hom(spec, &target, &chi, &psi)?;
    Ok(WeylEmbedding { l, m, basis, target, hom })
}

fn linalg_dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `𝓑(V, ω, G)` as a localized quotient of `S(g)` for a solvable `g`.
#[derive(Debug, Clone)]
pub struct Realization {
    pub lie: LieAlgebra,
    pub ideal: SubstitutionIdeal,
    /// Generators of the multiplicative set, as elements of `S(g)`.
    pub semi_invariants: Vec<Poly>,
    pub target: PoissonAlgebra,
    /// Images of the generators of `build(spec)` in `target`.
    pub forward: Vec<Poly>,
    /// Images of the variables of `target` in `build(spec)`.
    pub backward: Vec<Poly>,
}

/// `g` spanned by `x_i, y_i, s_k, g_j, w` with `[x_i, y_j] = δ_ij w` and
/// `[g_j, v] = λ_j(v) g_j`; the ideal is `w → 1` and `g_j` are inverted.
pub fn realize_from_lie(spec: &BvwgSpec) -> Result<Realization, BvwgError> {
    require_simple(spec)?;
    let basis = symplectic_basis(spec);
    let (l, t, m) = (basis.x.len(), basis.s.len(), spec.p());
    let nv = 2 * l + t;
    let dim = nv + m + 1;
    let mut names: Vec<String> = Vec::new();
    names.extend((1..=l).map(|i| format!("x{i}")));
    names.extend((1..=l).map(|i| format!("y{i}")));
    names.extend((1..=t).map(|k| format!("s{k}")));
    let taken: Vec<String> = names.clone();
    for g in &spec.g_names {
        let mut name = g.clone();
        while taken.contains(&name) || names.contains(&name) {
            name.push('_');
        }
        names.push(name);
    }
    let mut w = "w".to_string();
    while names.contains(&w) {
        w.push('_');
    }
    names.push(w);
    let wi = dim - 1;
    let mut brackets: Vec<((usize, usize), Vector)> = (0..l).map(|i| ((i, l + i), unit_vec(dim, wi))).collect();
    let all = basis.all();
    for (j, lam) in spec.weights.iter().enumerate() {
        for (c, b) in all.iter().enumerate() {
            let val = linalg_dot(lam, b);
            if !val.is_zero() {
                brackets.push(((nv + j, c), linalg::scale_vec(&unit_vec(dim, nv + j), &val)));
            }
        }
    }
    let lie = LieAlgebra::new(names, brackets)?;
    let canonical = PoissonAlgebra::canonical_from_lie(&lie);
    let ideal = SubstitutionIdeal::new([(wi, Poly::one())], canonical.vars())?;
    let semi_invariants: Vec<Poly> = (0..m).map(|j| Poly::var(nv + j)).collect();
    let target = canonical.quotient(&ideal)?.localize(&semi_invariants)?;
    let chi: Vec<Poly> =
        basis.coordinates().iter().map(|c| c.iter().enumerate().map(|(k, x)| Poly::var(k).scale(x)).sum()).collect();
    let psi = semi_invariants.clone();
    let hom = universal_hom(spec, &target, &chi, &psi)?;
    let mut backward: Vec<Poly> = all.iter().map(|b| linear_form(b)).collect();
    backward.extend((0..m).map(|j| Poly::var(spec.g_var(j))));
    backward.push(Poly::one());
    let r = Realization { lie, ideal, semi_invariants, target, forward: hom.images, backward };
    r.verify(spec)?;
    Ok(r)
}

impl Realization {
    /// Both composites are the identity on generators and both maps
    /// preserve generator brackets.
    pub fn verify(&self, spec: &BvwgSpec) -> Result<(), BvwgError> {
        let source = build(spec);
        let fail = |witness: String| Err(BvwgError::ConditionFailed { condition: "roundtrip", witness });
        let n = source.nvars();
        for i in 0..n {
            let back = self.forward[i].compose(&self.backward, source.vars());
            if source.nf(&back) != Poly::var(i) {
                return fail(format!("generator `{}`", source.vars()[i].name));
            }
            for j in i + 1..n {
                let lhs =
                    self.target.nf(&source.bracket_poly(&Poly::var(i), &Poly::var(j)).compose(&self.forward, self.target.vars()));
                if lhs != self.target.bracket_poly(&self.forward[i], &self.forward[j]) {
                    return fail(format!("bracket of `{}` and `{}`", source.vars()[i].name, source.vars()[j].name));
                }
            }
        }
        let gens = self.target.generators();
        for &a in &gens {
            let there = self.backward[a].compose(&self.forward, self.target.vars());
            if self.target.nf(&there) != Poly::var(a) {
                return fail(format!("generator `{}`", self.target.vars()[a].name));
            }
            for &b in gens.iter().filter(|&&b| b > a) {
                let lhs = self.target.bracket_poly(&Poly::var(a), &Poly::var(b)).compose(&self.backward, source.vars());
                if source.nf(&lhs) != source.bracket_poly(&self.backward[a], &self.backward[b]) {
                    return fail(format!("bracket of `{}` and `{}`", self.target.vars()[a].name, self.target.vars()[b].name));
                }
            }
        }
        Ok(())
    }
}

fn translate(p: &Poly, shift: &[Rational], vars: &[VarSpec]) -> Poly {
    let bindings: BTreeMap<usize, Poly> =
        shift.iter().enumerate().map(|(i, c)| (i, &Poly::var(i) + &Poly::constant(c.clone()))).collect();
    p.substitute_unchecked(&bindings, vars)
}

fn omega_coordinates(spec: &BvwgSpec, basis: &[Vector]) -> (Vec<VarSpec>, Vec<Vector>) {
    let vars = (1..=basis.len()).map(|i| VarSpec::new(format!("u{i}"))).collect();
    let shifts = spec.weights.iter().map(|w| basis.iter().map(|b| linalg_dot(w, b)).collect()).collect();
    (vars, shifts)
}

fn to_v(p: &Poly, basis: &[Vector], spec: &BvwgSpec) -> Poly {
    let images: Vec<Poly> = basis.iter().map(|b| linear_form(b)).collect();
    p.compose(&images, &spec.vars())
}

/// A nonconstant `r ∈ S(V^ω)` of degree at most `d` fixed by every
/// `φ_{g_k}`, if one exists.
pub fn fixed_ring_search(spec: &BvwgSpec, d: u32) -> Option<Poly> {
    let basis = spec.omega_kernel().basis().to_vec();
    let (uvars, shifts) = omega_coordinates(spec, &basis);
    let domain: Vec<Monomial> =
        PoissonAlgebra::monomials_up_to(&(0..basis.len()).collect::<Vec<_>>(), d).into_iter().filter(|m| !m.is_one()).collect();
    let maps = |m: &Monomial| -> Vec<Poly> {
        let p = Poly::term(m.clone(), Rational::one());
        shifts.iter().map(|s| &translate(&p, s, &uvars) - &p).collect()
    };
    let ker = span::kernel(&domain, &maps);
    ker.first().map(|r| to_v(r, &basis, spec))
}

/// Spot form of the stable-ideal criterion. Seeds are the monomials of
/// degree at most `d` in the basis of `V^ω` dual to a maximal independent
/// family of restricted weights completed by coordinate covectors; each
/// seed is pushed down by `r ↦ φ_g(r) − r`. A seed that stalls at a
/// nonconstant fixed `r` yields the proper stable ideal `S(V^ω) r`, which
/// is returned.
pub fn stable_ideal_search(spec: &BvwgSpec, d: u32) -> Option<Poly> {
    let ker = spec.omega_kernel().basis().to_vec();
    let k = ker.len();
    let restricted: Vec<Vector> = spec.weights.iter().map(|w| ker.iter().map(|b| linalg_dot(w, b)).collect()).collect();
    let mut ech = Echelon::new(k);
    let mut rows: Vec<Vector> = Vec::new();
    for r in restricted.iter().cloned().chain((0..k).map(|i| unit_vec(k, i))) {
        if ech.insert(linalg::sparse(&r)) {
            rows.push(r);
        }
    }
    let dual: Vec<Vector> = (0..k)
        .map(|j| {
            let c = linalg::solve(&rows, &unit_vec(k, j)).expect("square basis");
            let mut v = zero_vec(spec.n());
            for (a, b) in ker.iter().enumerate() {
                linalg::add_scaled(&mut v, b, &c[a]);
            }
            v
        })
        .collect();
    let (uvars, shifts) = omega_coordinates(spec, &dual);
    for m in PoissonAlgebra::monomials_up_to(&(0..k).collect::<Vec<_>>(), d) {
        if m.is_one() {
            continue;
        }
        let mut r = Poly::term(m, Rational::one());
        loop {
            let moved = shifts.iter().map(|s| &translate(&r, s, &uvars) - &r).find(|q| !q.is_zero());
            match moved {
                Some(q) => r = q,
                None => break,
            }
        }
        if !r.is_constant() {
            return Some(to_v(&r, &dual, spec));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn spec(omega: &[Vec<i64>], weights: &[Vec<i64>]) -> BvwgSpec {
        BvwgSpec::from_ints(omega, weights).unwrap()
    }

    fn simple_1() -> BvwgSpec {
        spec(&[vec![0]], &[vec![1]])
    }

    fn symplectic(weights: &[Vec<i64>]) -> BvwgSpec {
        spec(&[vec![0, 1], vec![-1, 0]], weights)
    }

    #[test]
    fn builds() {
        let a = build(&symplectic(&[]));
        assert_eq!(a.named_table().len(), 1);
        let a = build(&simple_1());
        assert_eq!(a.named_table()[&("v1".to_string(), "g1".to_string())], "-g1");
        assert!(a.jacobi_check().is_ok());
        let a = build(&spec(&[], &[vec![], vec![]]));
        assert!(a.named_table().is_empty());
        assert!(BvwgSpec::from_ints(&[vec![0, 1], vec![1, 0]], &[]).is_err());
        assert!(BvwgSpec::from_ints(&[vec![0]], &[vec![1, 2]]).is_err());
    }

    #[test]
    fn universal_property() {
        let s = simple_1();
        let a = build(&s);
        let h = universal_hom(&s, &a, &[Poly::var(0)], &[Poly::var(1)]).unwrap();
        let p = a.parse("v1^2*g1^-1 + 3").unwrap();
        assert_eq!(h.apply(&a, &p), p);
        let bad = universal_hom(&s, &a, &[Poly::var(0)], &[&Poly::var(1) * &Poly::var(1)]);
        assert!(matches!(bad, Err(BvwgError::ConditionFailed { condition: "ii", .. })));
    }

    #[test]
    fn translations() {
        let s = simple_1();
        let a = build(&s);
        let v = Poly::var(0);
        assert_eq!(phi_g(&s, &[1], &v), &v + &Poly::one());
        assert_eq!(phi_g(&s, &[0], &v.pow(3)), v.pow(3));
        let g = lattice_element(&s, &[-2]);
        assert_eq!(a.bracket_poly(&g, &v), g.scale(&int(-2)));
    }

    #[test]
    fn simplicity() {
        assert!(is_simple(&symplectic(&[])).simple);
        assert!(is_simple(&simple_1()).simple);
        let s = spec(&[vec![0]], &[]);
        let r = is_simple(&s);
        assert!(!r.simple);
        assert_eq!(r.certificate, vec![vec![int(1)]]);
        assert!(matches!(centralizer_center(&s), Err(BvwgError::NotSimple { .. })));
        assert!(fixed_ring_search(&s, 3).is_some());
        assert!(stable_ideal_search(&s, 3).is_some());
        assert!(fixed_ring_search(&simple_1(), 6).is_none());
        assert!(stable_ideal_search(&simple_1(), 6).is_none());
        // the fixed vector v1 + v2 is not a coordinate vector
        let s = spec(&[vec![0, 0], vec![0, 0]], &[vec![1, -1]]);
        assert!(!is_simple(&s).simple);
        assert_eq!(fixed_ring_search(&s, 2).unwrap(), build(&s).parse("v1 + v2").unwrap());
        assert!(stable_ideal_search(&s, 1).is_some());
    }

    #[test]
    fn centralizers_and_invariants() {
        let s = symplectic(&[vec![1, 0]]);
        let (c, d) = centralizer_center(&s).unwrap();
        assert_eq!(c.v_basis, vec![vec![int(0), int(1)]]);
        assert_eq!(c.omega, vec![vec![int(0)]]);
        assert_eq!(d.v_basis, c.v_basis);
        let (c, d) = centralizer_center(&simple_1()).unwrap();
        assert_eq!((c.dim(), d.dim()), (0, 0));
        let (c, _) = centralizer_center(&spec(&[], &[vec![]])).unwrap();
        assert_eq!(c.g_names.len(), 1);
        assert_eq!(invariants(&simple_1()).gk_total, 2);
        let inv = invariants(&s);
        assert_eq!((inv.gk_total, inv.rank_g, inv.gk_centralizer, inv.gk_center), (3, 1, 2, 2));
        assert!((growth_exponent(&simple_1(), 40) - 2.0).abs() < 0.2);
    }

    #[test]
    fn symplectic_forms() {
        let s = spec(&[vec![0, 2, 1], vec![-2, 0, 3], vec![-1, -3, 0]], &[vec![1, 0, 0]]);
        let b = symplectic_basis(&s);
        assert_eq!((b.x.len(), b.s.len()), (1, 1));
        assert_eq!(s.form(&b.x[0], &b.y[0]), int(1));
        assert!(s.form(&b.x[0], &b.s[0]).is_zero() && s.form(&b.y[0], &b.s[0]).is_zero());
    }

    #[test]
    fn weyl_embeddings() {
        let e = embed_in_weyl(&simple_1()).unwrap();
        assert_eq!((e.l, e.m), (0, 1));
        assert_eq!(e.target.show(&e.hom.images[0]), "T1*Z1");
        assert!(matches!(embed_in_weyl(&symplectic(&[])), Ok(_)));
        assert!(matches!(embed_in_weyl(&spec(&[vec![0]], &[])), Err(BvwgError::NotSimple { .. })));
        let e = embed_in_weyl(&symplectic(&[vec![1, 0]])).unwrap();
        assert_eq!((e.l, e.m), (1, 1));
    }

    #[test]
    fn realizations() {
        let r = realize_from_lie(&simple_1()).unwrap();
        assert_eq!(r.lie.dim(), 3);
        let r = realize_from_lie(&symplectic(&[vec![1, 0]])).unwrap();
        assert_eq!(r.lie.dim(), 4);
        assert!(r.lie.verify().is_ok());
        let s = spec(&[vec![0, 1, 0], vec![-1, 0, 0], vec![0, 0, 0]], &[vec![0, 1, 2], vec![1, 0, 0]]);
        assert!(realize_from_lie(&s).is_ok());
    }
}
