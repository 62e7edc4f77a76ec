//! Reflexive homology: modules over the reflexive category, the periodic
//! bicomplex computing `Tor` against the constant module, the
//! characteristic-zero quotient method, `C_2` homology and hyperhomology.

mod engine;
mod hyper;
mod module;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::complexes::ComplexError;
use crate::linalg::{LinalgError, Ring};
use crate::validation::Violation;

pub use engine::{
    c2_homology, epsilon, hochschild_complex, hochschild_homology, hr, hr_quotient_method, hr_quotient_of_module,
    reflexive_bicomplex, row_homology_check, RowCheck,
};
pub use hyper::{hyper_hr, ReflexiveChainComplex};
pub use module::{constant_module, DeltaRModule, Operator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid module: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("need levels through {needed}, module stops at {available}")]
    LevelTooLow { needed: usize, available: usize },
    #[error("map is not an involution")]
    NotInvolution,
    #[error("2 is not invertible in {0}")]
    TwoNotInvertible(Ring),
}
