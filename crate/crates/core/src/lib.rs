//! Exact symbolic computation with Poisson algebras attached to solvable Lie
//! algebras over the rationals.

pub mod bvwg;
pub mod decompose;
pub mod invariants;
pub mod lie;
pub mod linalg;
pub mod poisson;
pub mod poly;
pub mod problem;
pub mod rational;
pub mod report;
pub mod span;
pub mod weyl;

pub use poly::{parse, Monomial, Poly, PolyError, VarSpec};
pub use rational::Rational;
