//! The JSON problem file: one Lie algebra with an optional ideal, or one
//! `bvwg` specification.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::bvwg::BvwgSpec;
use crate::lie::LieAlgebra;
use crate::linalg::{zero_vec, Vector};
use crate::poisson::{PoissonAlgebra, SubstitutionIdeal};
use crate::rational::{parse_rational, Rational};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub name: String,
    pub lie: Option<LieSection>,
    pub ideal: Option<Vec<Rule>>,
    pub bvwg: Option<BvwgSection>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieSection {
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<Bracket>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bracket {
    pub i: usize,
    pub j: usize,
    pub coeffs: BTreeMap<String, Scalar>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rule {
    pub var: String,
    pub value: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BvwgSection {
    pub v_names: Vec<String>,
    pub omega: Vec<Vec<Scalar>>,
    pub g_names: Vec<String>,
    pub weights: Vec<Vec<Scalar>>,
}

/// A rational given as a JSON integer or as a `"p/q"` string.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    fn value(&self) -> Result<Rational, String> {
        match self {
            Scalar::Int(n) => Ok(Rational::from_integer((*n).into())),
            Scalar::Text(s) => parse_rational(s).ok_or_else(|| format!("bad rational `{s}`")),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default = "default_degree")]
    pub max_degree: u32,
    #[serde(default = "default_cap")]
    pub nilpotency_cap: u32,
}

fn default_degree() -> u32 {
    6
}

fn default_cap() -> u32 {
    64
}

impl Default for Options {
    fn default() -> Self {
        Options { max_degree: default_degree(), nilpotency_cap: default_cap() }
    }
}

pub enum Problem {
    Lie { name: String, g: LieAlgebra, ideal: SubstitutionIdeal, options: Options },
    Bvwg { name: String, spec: BvwgSpec, options: Options },
}

impl Problem {
    pub fn load(path: &Path) -> Result<Problem, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn from_json(text: &str) -> Result<Problem, String> {
        let file: ProblemFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
        file.into_problem()
    }

    pub fn name(&self) -> &str {
        match self {
            Problem::Lie { name, .. } | Problem::Bvwg { name, .. } => name,
        }
    }

    pub fn options(&self) -> &Options {
        match self {
            Problem::Lie { options, .. } | Problem::Bvwg { options, .. } => options,
        }
    }
}

impl ProblemFile {
    pub fn into_problem(self) -> Result<Problem, String> {
        match (self.lie, self.bvwg) {
            (Some(lie), None) => {
                if lie.basis.len() != lie.dim {
                    return Err(format!("basis has {} names but dim is {}", lie.basis.len(), lie.dim));
                }
                let mut br: Vec<((usize, usize), Vector)> = Vec::new();
                for b in &lie.brackets {
                    if b.i >= lie.dim || b.j >= lie.dim {
                        return Err(format!("bracket ({}, {}) out of range", b.i, b.j));
                    }
                    let mut v = zero_vec(lie.dim);
                    for (k, c) in &b.coeffs {
                        let k: usize = k.parse().map_err(|_| format!("bad coefficient index `{k}`"))?;
                        if k >= lie.dim {
                            return Err(format!("coefficient index {k} out of range"));
                        }
                        v[k] = c.value()?;
                    }
                    br.push(((b.i, b.j), v));
                }
                let g = LieAlgebra::unchecked(lie.basis, br).map_err(|e| e.to_string())?;
                let a = PoissonAlgebra::canonical_from_lie(&g);
                let rules: Vec<(&str, &str)> = self.ideal.iter().flatten().map(|r| (r.var.as_str(), r.value.as_str())).collect();
                let ideal = SubstitutionIdeal::parse(&rules, a.vars()).map_err(|e| e.to_string())?;
                Ok(Problem::Lie { name: self.name, g, ideal, options: self.options })
            }
            (None, Some(b)) => {
                if self.ideal.is_some() {
                    return Err("an ideal is only allowed with a Lie section".into());
                }
                let conv = |rows: &[Vec<Scalar>]| -> Result<Vec<Vector>, String> {
                    rows.iter().map(|r| r.iter().map(Scalar::value).collect()).collect()
                };
                let spec = BvwgSpec::new(b.v_names, conv(&b.omega)?, b.g_names, conv(&b.weights)?).map_err(|e| e.to_string())?;
                Ok(Problem::Bvwg { name: self.name, spec, options: self.options })
            }
            _ => Err("exactly one of `lie` and `bvwg` must be present".into()),
        }
    }
}
