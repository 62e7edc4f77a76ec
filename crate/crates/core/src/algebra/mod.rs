//! Finite-rank involutive algebras and bimodules, the Loday functor, the
//! weight-graded tensor algebra, the matrix trace and Hermitian Morita data.

mod constructors;
mod loday;
mod morita;
pub(crate) mod sparse;
mod tensor;

use thiserror::Error;

use crate::linalg::{LinalgError, Matrix, Ring, Scalar};
use crate::validation::{Collector, Violation};

pub use constructors::{dual_numbers, gaussian_integers, group_algebra, ground_algebra, matrix_algebra};
pub use loday::{check_module_map, loday_module, tensor_weight_module, tensor_weight_rank, trace_map};
pub use morita::{
    identity_morita_data, induced_involutive_bimodule, matrix_morita_data, validate_morita_data,
    HermitianMoritaData,
};
pub use sparse::SparseVector;
pub use tensor::{tensor_over_algebra, BalancedTensor};

use sparse::{apply_columns, collect, columns_of, from_dense, scale, unit_vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("involution does not descend to the balanced tensor product")]
    IllDefinedInvolution,
    #[error("{0} is not invertible over the ring")]
    NotInvertible(String),
    #[error("validation failed: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}

/// Algebra free of finite rank over the ground ring, with an order-two
/// anti-automorphism `sigma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutiveAlgebra {
    ring: Ring,
    labels: Vec<String>,
    unit: SparseVector,
    /// `products[i][j]` is `e_i * e_j`.
    products: Vec<Vec<SparseVector>>,
    sigma: Matrix,
    sigma_cols: Vec<SparseVector>,
}

impl InvolutiveAlgebra {
    /// Assembles an algebra from dense structure constants:
    /// `mul[i][j][k]` is the coefficient of `e_k` in `e_i * e_j`. Only shapes
    /// are checked here; see [`InvolutiveAlgebra::validate`].
    pub fn new(
        ring: Ring,
        labels: Vec<String>,
        unit: Vec<Scalar>,
        mul: Vec<Vec<Vec<Scalar>>>,
        sigma: Matrix,
    ) -> Result<Self, AlgebraError> {
        let n = labels.len();
        if unit.len() != n {
            return Err(AlgebraError::ShapeMismatch(format!("unit has {} entries, rank is {n}", unit.len())));
        }
        if mul.len() != n || mul.iter().any(|row| row.len() != n || row.iter().any(|v| v.len() != n)) {
            return Err(AlgebraError::ShapeMismatch(format!("structure constants must be {n}x{n}x{n}")));
        }
        let products = mul
            .iter()
            .map(|row| row.iter().map(|v| from_dense(ring, v)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let unit = from_dense(ring, &unit)?;
        Self::from_sparse(ring, labels, unit, products, sigma)
    }

    pub(crate) fn from_sparse(
        ring: Ring,
        labels: Vec<String>,
        unit: SparseVector,
        products: Vec<Vec<SparseVector>>,
        sigma: Matrix,
    ) -> Result<Self, AlgebraError> {
        let n = labels.len();
        if sigma.shape() != (n, n) {
            return Err(AlgebraError::ShapeMismatch(format!(
                "involution is {:?}, expected {n}x{n}",
                sigma.shape()
            )));
        }
        let sigma = sigma.reduce(ring)?;
        let sigma_cols = columns_of(&sigma);
        Ok(InvolutiveAlgebra {
            ring,
            labels,
            unit,
            products,
            sigma,
            sigma_cols,
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &SparseVector {
        &self.unit
    }

    pub fn sigma(&self) -> &Matrix {
        &self.sigma
    }

    /// `sigma(e_i)`.
    pub fn bar(&self, i: usize) -> &SparseVector {
        &self.sigma_cols[i]
    }

    pub fn bar_vec(&self, x: &[(usize, Scalar)]) -> SparseVector {
        apply_columns(self.ring, &self.sigma_cols, x)
    }

    pub fn product(&self, i: usize, j: usize) -> &SparseVector {
        &self.products[i][j]
    }

    pub fn mul_vec(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> SparseVector {
        let mut terms = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                let ab = a * b;
                terms.extend(scale(&self.products[*i][*j], &ab));
            }
        }
        collect(self.ring, terms)
    }

    /// Dense structure constants, the inverse of [`InvolutiveAlgebra::new`].
    pub fn structure_constants(&self) -> Vec<Vec<Vec<Scalar>>> {
        let n = self.rank();
        self.products
            .iter()
            .map(|row| row.iter().map(|v| sparse::to_dense(v, n)).collect())
            .collect()
    }

    /// Matrix of left multiplication by `e_i`.
    pub fn left_matrix(&self, i: usize) -> Matrix {
        Matrix::from_columns(self.rank(), &self.products[i])
    }

    /// Matrix of right multiplication by `e_j`.
    pub fn right_matrix(&self, j: usize) -> Matrix {
        let cols: Vec<SparseVector> = (0..self.rank()).map(|i| self.products[i][j].clone()).collect();
        Matrix::from_columns(self.rank(), &cols)
    }

    /// Every algebra axiom checked on basis tuples.
    pub fn validate(&self) -> Vec<Violation> {
        let mut c = Collector::new();
        let n = self.rank();
        for i in 0..n {
            let e = unit_vector(i);
            c.check(self.mul_vec(&self.unit, &e) == collect(self.ring, e.clone()), "left unit", || {
                format!("1 * {} != {}", self.labels[i], self.labels[i])
            });
            c.check(self.mul_vec(&e, &self.unit) == collect(self.ring, e.clone()), "right unit", || {
                format!("{} * 1 != {}", self.labels[i], self.labels[i])
            });
            let twice = self.bar_vec(self.bar(i));
            c.check(twice == collect(self.ring, e), "involution squares to identity", || {
                format!("bar(bar({})) != {}", self.labels[i], self.labels[i])
            });
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = self.bar_vec(&self.products[i][j]);
                let rhs = self.mul_vec(self.bar(j), self.bar(i));
                c.check(lhs == rhs, "involution is an anti-homomorphism", || {
                    format!("bar({0} * {1}) != bar({1}) * bar({0})", self.labels[i], self.labels[j])
                });
                for k in 0..n {
                    let left = self.mul_vec(&self.products[i][j], &unit_vector(k));
                    let right = self.mul_vec(&unit_vector(i), &self.products[j][k]);
                    c.check(left == right, "associativity", || {
                        format!(
                            "({} * {}) * {} != {} * ({} * {})",
                            self.labels[i], self.labels[j], self.labels[k], self.labels[i], self.labels[j], self.labels[k]
                        )
                    });
                }
            }
        }
        c.finish()
    }

    /// Copy with the coefficient of `e_k` in `e_i * e_j` shifted by `delta`;
    /// used to probe the validator.
    pub fn with_product_perturbed(&self, i: usize, j: usize, k: usize, delta: &Scalar) -> Result<Self, AlgebraError> {
        let mut products = self.products.clone();
        let mut entry = products[i][j].clone();
        entry.push((k, delta.clone()));
        products[i][j] = collect(self.ring, entry);
        Self::from_sparse(self.ring, self.labels.clone(), self.unit.clone(), products, self.sigma.clone())
    }

    /// Copy with one entry of the involution matrix shifted by `delta`.
    pub fn with_involution_perturbed(&self, row: usize, col: usize, delta: &Scalar) -> Result<Self, AlgebraError> {
        let n = self.rank();
        let sigma = self.sigma.add(&Matrix::from_triplets(n, n, [(row, col, delta.clone())]));
        Self::from_sparse(self.ring, self.labels.clone(), self.unit.clone(), self.products.clone(), sigma)
    }

    /// The algebra as an involutive bimodule over itself.
    pub fn regular_bimodule(&self) -> InvolutiveBimodule {
        let n = self.rank();
        let left = (0..n)
            .map(|i| (0..n).map(|m| self.products[i][m].clone()).collect())
            .collect();
        let right = (0..n)
            .map(|j| (0..n).map(|m| self.products[m][j].clone()).collect())
            .collect();
        InvolutiveBimodule {
            module: Bimodule {
                ring: self.ring,
                labels: self.labels.clone(),
                left,
                right,
            },
            tau: self.sigma.clone(),
            tau_cols: self.sigma_cols.clone(),
        }
    }
}

/// Bimodule free of finite rank, with the action of each basis element of
/// the left and right algebras recorded on each module basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    ring: Ring,
    labels: Vec<String>,
    /// `left[i][m]` is `e_i * m_m`.
    left: Vec<Vec<SparseVector>>,
    /// `right[j][m]` is `m_m * e_j`.
    right: Vec<Vec<SparseVector>>,
}

impl Bimodule {
    /// `left[i]` and `right[j]` are the action matrices of the basis elements.
    pub fn from_matrices(ring: Ring, labels: Vec<String>, left: &[Matrix], right: &[Matrix]) -> Result<Self, AlgebraError> {
        let n = labels.len();
        let cols = |ms: &[Matrix]| -> Result<Vec<Vec<SparseVector>>, AlgebraError> {
            ms.iter()
                .map(|m| {
                    if m.shape() != (n, n) {
                        return Err(AlgebraError::ShapeMismatch(format!(
                            "action matrix is {:?}, module rank is {n}",
                            m.shape()
                        )));
                    }
                    Ok(columns_of(&m.reduce(ring)?))
                })
                .collect()
        };
        Ok(Bimodule {
            ring,
            left: cols(left)?,
            right: cols(right)?,
            labels,
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn left_rank(&self) -> usize {
        self.left.len()
    }

    pub fn right_rank(&self) -> usize {
        self.right.len()
    }

    pub fn left_action(&self, i: usize, m: usize) -> &SparseVector {
        &self.left[i][m]
    }

    pub fn right_action(&self, m: usize, j: usize) -> &SparseVector {
        &self.right[j][m]
    }

    pub fn left_matrix(&self, i: usize) -> Matrix {
        Matrix::from_columns(self.rank(), &self.left[i])
    }

    pub fn right_matrix(&self, j: usize) -> Matrix {
        Matrix::from_columns(self.rank(), &self.right[j])
    }

    /// `a * x` for algebra vector `a` and module vector `x`.
    pub fn act_left(&self, a: &[(usize, Scalar)], x: &[(usize, Scalar)]) -> SparseVector {
        let mut terms = Vec::new();
        for (i, s) in a {
            for (m, t) in x {
                terms.extend(scale(&self.left[*i][*m], &(s * t)));
            }
        }
        collect(self.ring, terms)
    }

    /// `x * b`.
    pub fn act_right(&self, x: &[(usize, Scalar)], b: &[(usize, Scalar)]) -> SparseVector {
        let mut terms = Vec::new();
        for (m, t) in x {
            for (j, s) in b {
                terms.extend(scale(&self.right[*j][*m], &(s * t)));
            }
        }
        collect(self.ring, terms)
    }

    /// Bimodule axioms for a module over `left_alg` on the left and
    /// `right_alg` on the right.
    pub fn validate(&self, left_alg: &InvolutiveAlgebra, right_alg: &InvolutiveAlgebra) -> Vec<Violation> {
        let mut c = Collector::new();
        if self.left.len() != left_alg.rank() || self.right.len() != right_alg.rank() {
            c.push("shape", || {
                format!(
                    "actions of {} and {} elements for algebras of rank {} and {}",
                    self.left.len(),
                    self.right.len(),
                    left_alg.rank(),
                    right_alg.rank()
                )
            });
            return c.finish();
        }
        self.check_actions(left_alg, right_alg, &mut c);
        c.finish()
    }

    fn check_actions(&self, left_alg: &InvolutiveAlgebra, right_alg: &InvolutiveAlgebra, c: &mut Collector) {
        let ring = self.ring;
        for m in 0..self.rank() {
            let e = unit_vector(m);
            let me = collect(ring, e.clone());
            c.check(self.act_left(left_alg.unit(), &e) == me, "left unit acts trivially", || {
                format!("1 * {}", self.labels[m])
            });
            c.check(self.act_right(&e, right_alg.unit()) == me, "right unit acts trivially", || {
                format!("{} * 1", self.labels[m])
            });
            for i in 0..left_alg.rank() {
                for j in 0..left_alg.rank() {
                    let lhs = self.act_left(&unit_vector(i), &self.left[j][m]);
                    let rhs = self.act_left(left_alg.product(i, j), &e);
                    c.check(lhs == rhs, "left action is associative", || {
                        format!("a{i} * (a{j} * {}) != (a{i} a{j}) * {}", self.labels[m], self.labels[m])
                    });
                }
                for j in 0..right_alg.rank() {
                    let lhs = self.act_right(&self.left[i][m], &unit_vector(j));
                    let rhs = self.act_left(&unit_vector(i), &self.right[j][m]);
                    c.check(lhs == rhs, "left and right actions commute", || {
                        format!("(a{i} * {}) * b{j} != a{i} * ({} * b{j})", self.labels[m], self.labels[m])
                    });
                }
            }
            for i in 0..right_alg.rank() {
                for j in 0..right_alg.rank() {
                    let lhs = self.act_right(&self.right[i][m], &unit_vector(j));
                    let rhs = self.act_right(&e, right_alg.product(i, j));
                    c.check(lhs == rhs, "right action is associative", || {
                        format!("({} * b{i}) * b{j} != {} * (b{i} b{j})", self.labels[m], self.labels[m])
                    });
                }
            }
        }
    }
}

/// Bimodule over a single involutive algebra with a compatible involution
/// `tau(a m b) = bar(b) tau(m) bar(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutiveBimodule {
    module: Bimodule,
    tau: Matrix,
    tau_cols: Vec<SparseVector>,
}

impl InvolutiveBimodule {
    pub fn new(module: Bimodule, tau: Matrix) -> Result<Self, AlgebraError> {
        let n = module.rank();
        if tau.shape() != (n, n) {
            return Err(AlgebraError::ShapeMismatch(format!("involution is {:?}, expected {n}x{n}", tau.shape())));
        }
        let tau = tau.reduce(module.ring)?;
        let tau_cols = columns_of(&tau);
        Ok(InvolutiveBimodule { module, tau, tau_cols })
    }

    /// The rank-0 bimodule.
    pub fn zero(a: &InvolutiveAlgebra) -> Self {
        let module = Bimodule {
            ring: a.ring(),
            labels: Vec::new(),
            left: vec![Vec::new(); a.rank()],
            right: vec![Vec::new(); a.rank()],
        };
        InvolutiveBimodule {
            module,
            tau: Matrix::zeros(0, 0),
            tau_cols: Vec::new(),
        }
    }

    pub fn module(&self) -> &Bimodule {
        &self.module
    }

    pub fn ring(&self) -> Ring {
        self.module.ring
    }

    pub fn rank(&self) -> usize {
        self.module.rank()
    }

    pub fn tau(&self) -> &Matrix {
        &self.tau
    }

    pub fn bar(&self, m: usize) -> &SparseVector {
        &self.tau_cols[m]
    }

    pub fn bar_vec(&self, x: &[(usize, Scalar)]) -> SparseVector {
        apply_columns(self.ring(), &self.tau_cols, x)
    }

    pub fn validate(&self, a: &InvolutiveAlgebra) -> Vec<Violation> {
        let mut c = Collector::new();
        let m = &self.module;
        if m.left.len() != a.rank() || m.right.len() != a.rank() {
            c.push("shape", || format!("actions do not match an algebra of rank {}", a.rank()));
            return c.finish();
        }
        m.check_actions(a, a, &mut c);
        for x in 0..m.rank() {
            let e = unit_vector(x);
            c.check(self.bar_vec(self.bar(x)) == collect(m.ring, e.clone()), "involution squares to identity", || {
                format!("bar(bar({}))", m.labels[x])
            });
            for i in 0..a.rank() {
                // bar(a m) = bar(m) bar(a)
                let lhs = self.bar_vec(&m.left[i][x]);
                let rhs = m.act_right(self.bar(x), a.bar(i));
                c.check(lhs == rhs, "involution reverses the left action", || {
                    format!("bar(a{i} * {}) != bar({}) * bar(a{i})", m.labels[x], m.labels[x])
                });
                let lhs = self.bar_vec(&m.right[i][x]);
                let rhs = m.act_left(a.bar(i), self.bar(x));
                c.check(lhs == rhs, "involution reverses the right action", || {
                    format!("bar({} * a{i}) != bar(a{i}) * bar({})", m.labels[x], m.labels[x])
                });
            }
        }
        c.finish()
    }
}
