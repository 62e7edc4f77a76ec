//! Finite groups, their reflexive sets, Eilenberg-Mac Lane reflexive
//! modules and the conjugacy-class decomposition.

mod decomposition;
mod eilenberg_maclane;
mod finite_group;
mod reflexive_set;

use thiserror::Error;

use crate::reflexive::EngineError;
use crate::validation::Violation;

pub use decomposition::{
    decomposition_check, hr_em, ABELIAN_SHORTCUT, hr_group, hr_group_algebra, DecompositionReport, OrbitSummand,
};
pub use eilenberg_maclane::{
    coefficient_support, conjugacy_data, em_reflexive_module, mac_lane_map, ConjugacyClass, ConjugacyDecomposition,
    EmCoefficients,
};
pub use finite_group::FiniteGroup;
pub use reflexive_set::{
    bar_reflexive_set, check_set_map, gamma_reflexive_set, gamma_to_bar, linearize, FiniteReflexiveSet,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("table is not a group: {0}")]
    NotAGroup(String),
    #[error("malformed reflexive set: {0}")]
    MalformedSet(String),
    #[error("invalid reflexive set: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("no conjugacy class with index {0}")]
    UnknownClass(usize),
    #[error("classes {classes:?} are not closed under inversion")]
    OrbitNotInversionClosed { classes: Vec<usize> },
    #[error(transparent)]
    Engine(#[from] EngineError),
}
