//! JSON input documents. Scalars are integers or `[numerator, denominator]`
//! pairs; there are no floats anywhere.

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;
use serde_json::Value;

use reflexive_core::algebra::{Bimodule, InvolutiveAlgebra, InvolutiveBimodule};
use reflexive_core::groups::{FiniteGroup, FiniteReflexiveSet};
use reflexive_core::linalg::{Matrix, Ring, Scalar};

use crate::CliError;

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum RingSpec {
    Name(String),
    Prime {
        #[serde(rename = "Fp")]
        p: u64,
    },
}

impl RingSpec {
    pub fn resolve(&self) -> Result<Ring, CliError> {
        match self {
            RingSpec::Name(s) => parse_ring(s),
            RingSpec::Prime { p } => prime(*p),
        }
    }
}

fn prime(p: u64) -> Result<Ring, CliError> {
    Ring::prime_field(p).map_err(|e| CliError::Parse(e.to_string()))
}

/// `Z`, `Q`, `F<p>` or `Fp:<p>`.
pub fn parse_ring(s: &str) -> Result<Ring, CliError> {
    let bad = || CliError::Parse(format!("unknown ring {s:?}; expected Z, Q, F<p> or Fp:<p>"));
    match s {
        "Z" => Ok(Ring::Integers),
        "Q" => Ok(Ring::Rationals),
        _ => {
            let digits = s.strip_prefix("Fp:").or_else(|| s.strip_prefix('F')).ok_or_else(bad)?;
            prime(digits.parse().map_err(|_| bad())?)
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Frac([i64; 2]),
}

impl Entry {
    fn scalar(&self) -> Result<Scalar, CliError> {
        match *self {
            Entry::Int(n) => Ok(BigRational::from_integer(BigInt::from(n))),
            Entry::Frac([_, 0]) => Err(CliError::Parse("zero denominator".into())),
            Entry::Frac([n, d]) => Ok(BigRational::new(BigInt::from(n), BigInt::from(d))),
        }
    }
}

/// `[basis_index, numerator, denominator]`.
type Term = (usize, i64, i64);

fn dense(terms: &[Term], dim: usize, what: &str) -> Result<Vec<Scalar>, CliError> {
    let mut v = vec![BigRational::from_integer(BigInt::from(0)); dim];
    for &(i, n, d) in terms {
        if i >= dim {
            return Err(CliError::Parse(format!("{what}: basis index {i} out of range (dim {dim})")));
        }
        v[i] += Entry::Frac([n, d]).scalar()?;
    }
    Ok(v)
}

fn matrix(rows: &[Vec<Entry>], shape: (usize, usize), what: &str) -> Result<Matrix, CliError> {
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        return Err(CliError::Parse(format!("{what} must be {}x{}", shape.0, shape.1)));
    }
    let mut triplets = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            triplets.push((r, c, e.scalar()?));
        }
    }
    Ok(Matrix::from_triplets(shape.0, shape.1, triplets))
}

fn labels(given: Option<Vec<String>>, dim: usize, prefix: &str, what: &str) -> Result<Vec<String>, CliError> {
    match given {
        Some(l) if l.len() != dim => Err(CliError::Parse(format!("{what}: {} basis labels for dim {dim}", l.len()))),
        Some(l) => Ok(l),
        None => Ok((0..dim).map(|i| format!("{prefix}{i}")).collect()),
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BimoduleDoc {
    dim: usize,
    basis: Option<Vec<String>>,
    /// One matrix per algebra basis element; column `m` is `e_i * m_m`.
    left: Vec<Vec<Vec<Entry>>>,
    right: Vec<Vec<Vec<Entry>>>,
    involution: Vec<Vec<Entry>>,
}

/// An involutive algebra, optionally with an involutive bimodule (the
/// regular one by default).
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub ring: Option<RingSpec>,
    dim: usize,
    basis: Option<Vec<String>>,
    unit: Vec<Term>,
    /// `mul[i][j]` lists the terms of `e_i * e_j`.
    mul: Vec<Vec<Vec<Term>>>,
    /// Column `j` is the image of `e_j`.
    involution: Vec<Vec<Entry>>,
    bimodule: Option<BimoduleDoc>,
}

impl AlgebraDoc {
    pub fn build(self, ring: Ring) -> Result<(InvolutiveAlgebra, Option<InvolutiveBimodule>), CliError> {
        let n = self.dim;
        let labels_a = labels(self.basis, n, "e", "algebra")?;
        if self.mul.len() != n || self.mul.iter().any(|r| r.len() != n) {
            return Err(CliError::Parse(format!("mul must be {n}x{n} lists of terms")));
        }
        let mul = self
            .mul
            .iter()
            .map(|row| row.iter().map(|t| dense(t, n, "mul")).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let sigma = matrix(&self.involution, (n, n), "involution")?;
        let a = InvolutiveAlgebra::new(ring, labels_a, dense(&self.unit, n, "unit")?, mul, sigma)
            .map_err(|e| CliError::Parse(e.to_string()))?;
        let m = match self.bimodule {
            None => None,
            Some(b) => {
                let d = b.dim;
                if b.left.len() != n || b.right.len() != n {
                    return Err(CliError::Parse(format!("bimodule needs {n} left and {n} right matrices")));
                }
                let conv = |ms: &[Vec<Vec<Entry>>], side: &str| -> Result<Vec<Matrix>, CliError> {
                    ms.iter().map(|m| matrix(m, (d, d), &format!("bimodule {side} action"))).collect()
                };
                let module = Bimodule::from_matrices(ring, labels(b.basis, d, "m", "bimodule")?, &conv(&b.left, "left")?, &conv(&b.right, "right")?)
                    .map_err(|e| CliError::Parse(e.to_string()))?;
                let tau = matrix(&b.involution, (d, d), "bimodule involution")?;
                Some(InvolutiveBimodule::new(module, tau).map_err(|e| CliError::Parse(e.to_string()))?)
            }
        };
        Ok((a, m))
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    elements: Vec<String>,
    /// `table[a][b]` is the index of `a * b`.
    table: Vec<Vec<usize>>,
}

impl GroupDoc {
    /// Group axiom failures are reported as validation errors, not parse
    /// errors.
    pub fn build(self) -> Result<FiniteGroup, CliError> {
        FiniteGroup::from_table(self.elements, self.table).map_err(|e| CliError::Invalid(vec![e.to_string()]))
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LevelDoc {
    simplices: Vec<String>,
    /// `faces[i][x]`; empty at level 0.
    #[serde(default)]
    faces: Vec<Vec<usize>>,
    /// `degeneracies[j][x]` into the next level; empty at the top level.
    #[serde(default)]
    degeneracies: Vec<Vec<usize>>,
    involution: Vec<usize>,
}

/// A reflexive set listed level by level.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetDoc {
    pub ring: Option<RingSpec>,
    levels: Vec<LevelDoc>,
}

impl SetDoc {
    pub fn build(self) -> Result<FiniteReflexiveSet, CliError> {
        let top = self.levels.len().saturating_sub(1);
        let mut labels = Vec::new();
        let mut faces = Vec::new();
        let mut degeneracies = Vec::new();
        let mut involutions = Vec::new();
        for (n, level) in self.levels.into_iter().enumerate() {
            labels.push(level.simplices);
            faces.push(level.faces);
            if n < top {
                degeneracies.push(level.degeneracies);
            } else if !level.degeneracies.is_empty() {
                return Err(CliError::Parse("the top level has no degeneracies".into()));
            }
            involutions.push(level.involution);
        }
        FiniteReflexiveSet::new(labels, faces, degeneracies, involutions).map_err(|e| CliError::Parse(e.to_string()))
    }
}

/// Generating space `V = k^dim` of a tensor algebra with its involution.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorDoc {
    pub ring: Option<RingSpec>,
    pub dim: usize,
    involution: Vec<Vec<Entry>>,
}

impl TensorDoc {
    pub fn involution(&self) -> Result<Matrix, CliError> {
        matrix(&self.involution, (self.dim, self.dim), "involution")
    }
}

pub enum Document {
    Algebra(AlgebraDoc),
    Group(GroupDoc),
    Set(SetDoc),
    Tensor(TensorDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Algebra(_) => "algebra",
            Document::Group(_) => "group",
            Document::Set(_) => "reflexive set",
            Document::Tensor(_) => "tensor generators",
        }
    }

    pub fn ring(&self) -> Option<&RingSpec> {
        match self {
            Document::Algebra(d) => d.ring.as_ref(),
            Document::Set(d) => d.ring.as_ref(),
            Document::Tensor(d) => d.ring.as_ref(),
            Document::Group(_) => None,
        }
    }
}

/// Reads a document and decides its kind from the keys present.
pub fn read(path: &Path) -> Result<Document, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| match e {
        CliError::Parse(msg) => CliError::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn parse(text: &str) -> Result<Document, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let has = |k: &str| value.get(k).is_some();
    let err = |e: serde_json::Error| CliError::Parse(e.to_string());
    if has("mul") {
        serde_json::from_value(value).map(Document::Algebra).map_err(err)
    } else if has("table") {
        serde_json::from_value(value).map(Document::Group).map_err(err)
    } else if has("levels") {
        serde_json::from_value(value).map(Document::Set).map_err(err)
    } else if has("dim") && has("involution") {
        serde_json::from_value(value).map(Document::Tensor).map_err(err)
    } else {
        Err(CliError::Parse("not an algebra, group, reflexive set or tensor document".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rings_parse() {
        assert_eq!(parse_ring("Z").unwrap(), Ring::Integers);
        assert_eq!(parse_ring("F2").unwrap(), Ring::PrimeField(2));
        assert_eq!(parse_ring("Fp:7").unwrap(), Ring::PrimeField(7));
        assert!(parse_ring("F4").is_err());
        let spec: RingSpec = serde_json::from_str(r#"{"Fp": 3}"#).unwrap();
        assert_eq!(spec.resolve().unwrap(), Ring::PrimeField(3));
    }

    #[test]
    fn dual_numbers_document() {
        let doc = r#"{"ring": "Z", "dim": 2, "basis": ["1", "x"], "unit": [[0, 1, 1]],
            "mul": [[[[0, 1, 1]], [[1, 1, 1]]], [[[1, 1, 1]], []]],
            "involution": [[1, 0], [0, 1]]}"#;
        let Document::Algebra(a) = parse(doc).unwrap() else { panic!("kind") };
        let (a, m) = a.build(Ring::Integers).unwrap();
        assert!(a.validate().is_empty());
        assert!(m.is_none());
    }

    #[test]
    fn halves_are_rejected_over_the_integers() {
        let doc = r#"{"dim": 1, "unit": [[0, 1, 2]], "mul": [[[[0, 1, 1]]]], "involution": [[1]]}"#;
        let Document::Algebra(a) = parse(doc).unwrap() else { panic!("kind") };
        assert!(matches!(a.build(Ring::Integers), Err(CliError::Parse(_))));
    }

    #[test]
    fn unknown_documents_fail_to_parse() {
        assert!(matches!(parse(r#"{"foo": 1}"#), Err(CliError::Parse(_))));
        assert!(matches!(parse("not json"), Err(CliError::Parse(_))));
    }
}
