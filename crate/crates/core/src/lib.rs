pub mod algebra;
pub mod complexes;
pub mod groups;
pub mod linalg;
pub mod oracles;
pub mod reflexive;
pub mod suite;
pub mod validation;
