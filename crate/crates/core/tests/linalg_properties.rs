use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use reflexive_core::linalg::{
    homology_of_pair, homology_via_kernel_lattice, kernel_basis, rank, snf, HomologyGroup, Matrix, Ring,
};

fn small_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, c), r).prop_map(|rows| Matrix::from_rows(&rows))
    })
}

/// A composable pair `d_out * d_in = 0`: `d_out` arbitrary, `d_in` a random
/// integer combination of kernel vectors of `d_out`, scaled to force torsion.
fn composable_pair() -> impl Strategy<Value = (Matrix, Matrix)> {
    (small_matrix(4, 6), 1usize..=4, prop::collection::vec(-2i64..=2, 24), 1i64..=3).prop_map(
        |(d_out, k, coeffs, scale)| {
            let ker = kernel_basis(&d_out, Ring::Integers).unwrap();
            let cols = ker.ncols();
            let mix: Vec<Vec<i64>> = (0..cols).map(|i| (0..k).map(|j| coeffs[(i * k + j) % 24]).collect()).collect();
            let d_in = if cols == 0 {
                Matrix::zeros(d_out.ncols(), k)
            } else {
                ker.mul(&Matrix::from_rows(&mix)).scale(&BigInt::from(scale).into())
            };
            (d_out, d_in)
        },
    )
}

fn divides(a: &BigInt, b: &BigInt) -> bool {
    (b % a).is_zero()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_is_a_unimodular_diagonalization(m in small_matrix(5, 5)) {
        let s = snf(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert!(s.u.mul(&s.u_inv).is_identity());
        prop_assert!(s.v.mul(&s.v_inv).is_identity());
        for (r, c, _) in s.d.triplets() {
            prop_assert_eq!(r, c);
        }
        for w in s.invariant_factors.windows(2) {
            prop_assert!(divides(&w[0], &w[1]));
        }
        prop_assert!(s.invariant_factors.iter().all(|f| f >= &BigInt::one()));
        prop_assert_eq!(s.rank(), rank(&m, Ring::Rationals).unwrap());
    }

    #[test]
    fn homology_routes_agree((d_out, d_in) in composable_pair()) {
        for ring in [Ring::Integers, Ring::Rationals, Ring::PrimeField(2), Ring::PrimeField(3)] {
            let a = homology_of_pair(&d_out, &d_in, ring).unwrap();
            let b = homology_via_kernel_lattice(&d_out, &d_in, ring).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn universal_coefficients_for_pairs((d_out, d_in) in composable_pair()) {
        // complex C_2 -> C_1 -> C_0 with H_1 from the pair and H_0 = coker d_out
        let h1 = homology_of_pair(&d_out, &d_in, Ring::Integers).unwrap();
        let h0 = homology_of_pair(&Matrix::zeros(0, d_out.nrows()), &d_out, Ring::Integers).unwrap();
        prop_assert_eq!(homology_of_pair(&d_out, &d_in, Ring::Rationals).unwrap().free_rank, h1.free_rank);
        for p in [2u64, 3, 5] {
            let f = Ring::PrimeField(p);
            let dim = homology_of_pair(&d_out, &d_in, f).unwrap().free_rank;
            prop_assert_eq!(dim, h1.free_rank + h1.torsion_divisible_by(p) + h0.torsion_divisible_by(p));
        }
    }

    #[test]
    fn kernel_basis_spans_a_saturated_kernel(m in small_matrix(4, 6)) {
        let k = kernel_basis(&m, Ring::Integers).unwrap();
        prop_assert!(m.mul(&k).is_zero());
        prop_assert_eq!(k.ncols(), m.ncols() - rank(&m, Ring::Rationals).unwrap());
        // saturated: the cokernel of the inclusion is free
        let quotient = homology_of_pair(&Matrix::zeros(0, k.nrows()), &k, Ring::Integers).unwrap();
        prop_assert!(quotient.torsion.is_empty());
    }

    #[test]
    fn invariant_factor_normalization(orders in prop::collection::vec(1u64..=12, 0..5), free in 0usize..3) {
        let g = HomologyGroup::new(Ring::Integers, free, &orders);
        let product: u64 = orders.iter().product();
        prop_assert_eq!(g.torsion.iter().product::<u64>(), product);
        for w in g.torsion.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
    }
}
