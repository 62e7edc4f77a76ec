use num_traits::One;

use crate::groups::FiniteGroup;
use crate::linalg::{Matrix, Ring, Scalar};

use super::sparse::{collect, unit_vector, SparseVector};
use super::{InvolutiveAlgebra, AlgebraError};

fn permutation_matrix(images: &[usize]) -> Matrix {
    let n = images.len();
    Matrix::from_triplets(n, n, images.iter().enumerate().map(|(j, &i)| (i, j, Scalar::one())))
}

/// The ground ring as an algebra of rank one with trivial involution.
pub fn ground_algebra(ring: Ring) -> InvolutiveAlgebra {
    InvolutiveAlgebra::from_sparse(
        ring,
        vec!["1".into()],
        unit_vector(0),
        vec![vec![unit_vector(0)]],
        Matrix::identity(1),
    )
    .expect("rank one data is consistent")
}

/// Group algebra with involution `g -> g^{-1}`; basis in table order.
pub fn group_algebra(g: &FiniteGroup, ring: Ring) -> InvolutiveAlgebra {
    let n = g.order();
    let products = (0..n)
        .map(|a| (0..n).map(|b| unit_vector(g.mul(a, b))).collect())
        .collect();
    let inverses: Vec<usize> = (0..n).map(|a| g.inv(a)).collect();
    InvolutiveAlgebra::from_sparse(
        ring,
        g.labels().to_vec(),
        unit_vector(g.identity()),
        products,
        permutation_matrix(&inverses),
    )
    .expect("group data is consistent")
}

/// `k[x]/(x^2)` with trivial involution, basis `1, x`.
pub fn dual_numbers(ring: Ring) -> InvolutiveAlgebra {
    let x = vec![(1, Scalar::one())];
    let products = vec![vec![unit_vector(0), x.clone()], vec![x, Vec::new()]];
    InvolutiveAlgebra::from_sparse(ring, vec!["1".into(), "x".into()], unit_vector(0), products, Matrix::identity(2))
        .expect("rank two data is consistent")
}

/// `k[i]/(i^2 + 1)` with conjugation `i -> -i`, basis `1, i`.
pub fn gaussian_integers(ring: Ring) -> InvolutiveAlgebra {
    let i = unit_vector(1);
    let minus_one = collect(ring, [(0, -Scalar::one())]);
    let products = vec![vec![unit_vector(0), i.clone()], vec![i, minus_one]];
    let sigma = Matrix::from_rows(&[vec![1, 0], vec![0, -1]]);
    InvolutiveAlgebra::from_sparse(ring, vec!["1".into(), "i".into()], unit_vector(0), products, sigma)
        .expect("rank two data is consistent")
}

/// `M_m(a)` with involution `(x_ij) -> (bar x_ji)`. Basis `e_ij (x) a_k`
/// indexed by `(i * m + j) * rank(a) + k`.
pub fn matrix_algebra(a: &InvolutiveAlgebra, m: usize) -> Result<InvolutiveAlgebra, AlgebraError> {
    if m == 0 {
        return Err(AlgebraError::ShapeMismatch("matrix size must be positive".into()));
    }
    let r = a.rank();
    let idx = |i: usize, j: usize, k: usize| (i * m + j) * r + k;
    let n = m * m * r;
    let mut labels = Vec::with_capacity(n);
    for i in 0..m {
        for j in 0..m {
            for k in 0..r {
                labels.push(format!("e{}{}*{}", i + 1, j + 1, a.labels()[k]));
            }
        }
    }
    let mut products = vec![vec![SparseVector::new(); n]; n];
    for (i, j, k) in (0..m).flat_map(|i| (0..m).flat_map(move |j| (0..r).map(move |k| (i, j, k)))) {
        for l in 0..m {
            for k2 in 0..r {
                products[idx(i, j, k)][idx(j, l, k2)] =
                    a.product(k, k2).iter().map(|(t, c)| (idx(i, l, *t), c.clone())).collect();
            }
        }
    }
    let unit = (0..m)
        .flat_map(|i| a.unit().iter().map(move |(k, c)| (idx(i, i, *k), c.clone())))
        .collect::<Vec<_>>();
    let mut trip = Vec::new();
    for i in 0..m {
        for j in 0..m {
            for k in 0..r {
                for (t, c) in a.bar(k) {
                    trip.push((idx(j, i, *t), idx(i, j, k), c.clone()));
                }
            }
        }
    }
    let sigma = Matrix::from_triplets(n, n, trip);
    InvolutiveAlgebra::from_sparse(a.ring(), labels, collect(a.ring(), unit), products, sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn constructors_validate() {
        for ring in [Ring::Integers, Ring::Rationals, Ring::PrimeField(2), Ring::PrimeField(3)] {
            assert!(ground_algebra(ring).validate().is_empty());
            assert!(dual_numbers(ring).validate().is_empty());
            assert!(gaussian_integers(ring).validate().is_empty());
            for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric3()] {
                assert!(group_algebra(&g, ring).validate().is_empty());
            }
        }
    }

    #[test]
    fn group_algebra_involutions() {
        let c2 = group_algebra(&FiniteGroup::cyclic(2), Ring::Integers);
        assert!(c2.sigma().is_identity());
        let c3 = group_algebra(&FiniteGroup::cyclic(3), Ring::Integers);
        assert_eq!(c3.sigma(), &Matrix::from_rows(&[vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]));
        let g = FiniteGroup::symmetric3();
        let s3 = group_algebra(&g, Ring::Integers);
        for a in 0..6 {
            assert_eq!(s3.bar(a), &unit_vector(g.inv(a)));
        }
    }

    #[test]
    fn matrix_algebras() {
        let z = ground_algebra(Ring::Integers);
        let m1 = matrix_algebra(&z, 1).unwrap();
        assert_eq!(m1.structure_constants(), z.structure_constants());
        assert_eq!(m1.sigma(), z.sigma());
        let m2 = matrix_algebra(&z, 2).unwrap();
        assert_eq!(m2.rank(), 4);
        assert!(m2.validate().is_empty());
        // e12 <-> e21
        assert_eq!(m2.bar(1), &unit_vector(2));
        let zi = matrix_algebra(&gaussian_integers(Ring::Integers), 2).unwrap();
        assert_eq!(zi.rank(), 8);
        assert!(zi.validate().is_empty());
        // bar(e12 * i) = -e21 * i
        assert_eq!(zi.bar(3), &vec![(5, -Scalar::one())]);
    }

    #[test]
    fn perturbed_constant_breaks_associativity() {
        // x * x = x in k[x]/(x^2) is still associative; 1 * x = 2x is not a unit law
        let a = dual_numbers(Ring::Integers);
        let mut mul = a.structure_constants();
        mul[0][1][1] = Scalar::from_integer(2.into());
        let bad = InvolutiveAlgebra::new(Ring::Integers, a.labels().to_vec(), vec![Scalar::one(), Scalar::zero()], mul, Matrix::identity(2))
            .unwrap();
        let report = bad.validate();
        assert!(report.iter().any(|v| v.axiom == "associativity"));
        assert!(report.iter().any(|v| v.axiom == "left unit"));
    }
}
