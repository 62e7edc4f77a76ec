use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

use reflexive_core::algebra::{dual_numbers, gaussian_integers, group_algebra, loday_module, tensor_weight_module};
use reflexive_core::complexes::total_complex_upto;
use reflexive_core::groups::{bar_reflexive_set, gamma_reflexive_set, linearize, FiniteGroup};
use reflexive_core::linalg::{Matrix, Ring};
use reflexive_core::reflexive::{hochschild_homology, hr, reflexive_bicomplex, DeltaRModule, Operator};

const RINGS: [Ring; 4] = [Ring::Integers, Ring::Rationals, Ring::PrimeField(2), Ring::PrimeField(3)];

fn build(kind: usize, param: usize, ring: Ring) -> DeltaRModule {
    let sign = if param.is_multiple_of(2) { 1 } else { -1 };
    match kind {
        0 => {
            let a = group_algebra(&FiniteGroup::cyclic(1 + param % 3), ring);
            loday_module(&a, &a.regular_bimodule(), sign, 4).unwrap()
        }
        1 => {
            let a = dual_numbers(ring);
            loday_module(&a, &a.regular_bimodule(), sign, 4).unwrap()
        }
        2 => {
            let a = gaussian_integers(ring);
            loday_module(&a, &a.regular_bimodule(), sign, 4).unwrap()
        }
        3 => {
            let inv = if param.is_multiple_of(2) { Matrix::identity(2) } else { Matrix::from_rows(&[vec![0, 1], vec![1, 0]]) };
            tensor_weight_module(2, &inv, param % 4, 4, ring).unwrap()
        }
        4 => linearize(&bar_reflexive_set(&FiniteGroup::cyclic(2 + param % 2), 4), ring),
        _ => linearize(&gamma_reflexive_set(&FiniteGroup::cyclic(2 + param % 2), 4), ring),
    }
}

fn module() -> impl Strategy<Value = DeltaRModule> {
    (0usize..6, 0usize..8, 0usize..4).prop_map(|(kind, param, r)| build(kind, param, RINGS[r]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn constructed_modules_validate(f in module()) {
        prop_assert!(f.validate().is_empty());
    }

    #[test]
    fn total_complex_squares_to_zero(f in module()) {
        let ring = f.ring();
        let tot = total_complex_upto(&reflexive_bicomplex(&f, 3, 3).unwrap(), 3).unwrap();
        for n in 2..=3 {
            prop_assert!(tot.differential(n - 1).mul_in(tot.differential(n), ring).unwrap().is_zero());
        }
    }

    #[test]
    fn boundary_squares_to_zero_and_commutes_with_twisted_involution(f in module()) {
        let ring = f.ring();
        for n in 2..=f.max_level() {
            prop_assert!(f.boundary(n - 1).mul_in(&f.boundary(n), ring).unwrap().is_zero());
        }
        for n in 1..=f.max_level() {
            let lhs = f.chain_involution(n - 1).mul_in(&f.boundary(n), ring).unwrap();
            let rhs = f.boundary(n).mul_in(&f.chain_involution(n), ring).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn direct_sums_add_homology(a in module(), kind in 0usize..6, param in 0usize..8) {
        let b = build(kind, param, a.ring());
        let sum = a.direct_sum(&b).unwrap();
        let (ha, hb, hs) = (hr(&a, 2).unwrap(), hr(&b, 2).unwrap(), hr(&sum, 2).unwrap());
        for n in 0..=2 {
            prop_assert_eq!(&ha[n].direct_sum(&hb[n]), &hs[n]);
        }
    }

    // over Q, HR+ and HR- split Hochschild homology
    #[test]
    fn signs_split_hochschild_over_rationals(kind in 0usize..6, param in 0usize..8) {
        let f = build(kind, param, Ring::Rationals);
        let plus = hr(&f, 2).unwrap();
        let minus = hr(&f.with_sign(-1), 2).unwrap();
        let hh = hochschild_homology(&f, 2).unwrap();
        for n in 0..=2 {
            prop_assert_eq!(plus[n].free_rank + minus[n].free_rank, hh[n].free_rank);
        }
    }

    #[test]
    fn face_perturbations_are_rejected(f in module(), level in 1usize..=4, pick in any::<prop::sample::Index>(), entry in any::<(prop::sample::Index, prop::sample::Index)>()) {
        let i = pick.index(level + 1);
        let (rows, cols) = f.operator(Operator::Face(level, i)).shape();
        prop_assume!(rows > 0 && cols > 0);
        let p = f.perturbed(Operator::Face(level, i), entry.0.index(rows), entry.1.index(cols), &BigRational::one());
        prop_assert!(!p.validate().is_empty());
    }

    #[test]
    fn involution_perturbations_are_rejected(f in module(), level in 0usize..=4, entry in any::<(prop::sample::Index, prop::sample::Index)>()) {
        let (rows, cols) = f.operator(Operator::Involution(level)).shape();
        prop_assume!(rows > 0);
        let p = f.perturbed(Operator::Involution(level), entry.0.index(rows), entry.1.index(cols), &BigRational::one());
        prop_assert!(!p.validate().is_empty());
    }
}
