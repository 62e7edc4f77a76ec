//! Exact sparse linear algebra over the integers, the rationals and prime
//! fields: ranks, kernels, Smith normal form and homology of a composable
//! pair of maps.

pub(crate) mod domain;
mod echelon;
mod eliminate;
mod homology;
mod matrix;
mod ring;
mod snf;
mod solve;

use thiserror::Error;

pub use homology::{homology_of_pair, homology_via_kernel_lattice, HomologyGroup};
pub use matrix::Matrix;
pub use ring::{Ring, Scalar};
pub use snf::{snf, SmithForm};
pub use solve::{express_in_basis, free_quotient, integer_invariant_factors, kernel_basis, rank, Presentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("column {column} is not in the span of the basis")]
    NotInSpan { column: usize },
    #[error("composite of the two differentials is nonzero")]
    CompositionNonzero,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("{value} is not an element of {ring}")]
    NotInRing { value: String, ring: Ring },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("quotient has torsion (invariant factors {0:?})")]
    TorsionInQuotient(Vec<String>),
    #[error("invariant factor {0} does not fit in 64 bits")]
    Overflow(String),
}
