//! Chain complexes, multicomplexes and their totalizations.

mod chain;
mod multi;
mod quotient;

use thiserror::Error;

use crate::linalg::{LinalgError, Ring};

pub use chain::{homology_range, ChainComplex};
pub use multi::{
    total_complex, total_complex_3, total_complex_3_upto, total_complex_upto, Bicomplex, DifferentialFn,
    SquareRule, Tricomplex,
};
pub use quotient::quotient_by_involution;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("differential does not square to zero: {0}")]
    SquareZeroViolation(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("differentials along axes {axes:?} neither commute nor anticommute uniformly")]
    NoUniformSquareRule { axes: (usize, usize) },
    #[error("degree {requested} out of range (computed through {available})")]
    DegreeOutOfRange { requested: usize, available: usize },
    #[error("2 is not invertible in {0}")]
    TwoNotInvertible(Ring),
    #[error("differential does not descend to the quotient in degree {degree}")]
    IllDefinedDifferential { degree: usize },
    #[error("map in degree {degree} is not an involution")]
    NotInvolution { degree: usize },
}
