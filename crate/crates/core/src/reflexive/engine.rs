use std::sync::Arc;

use num_traits::One;

use crate::algebra::{loday_module, InvolutiveAlgebra, InvolutiveBimodule};
use crate::complexes::{quotient_by_involution, total_complex_upto, Bicomplex, ChainComplex};
use crate::linalg::{HomologyGroup, Matrix, Ring, Scalar};

use super::{DeltaRModule, EngineError};

/// Sign in the horizontal map `1 + epsilon(p, q) R_q` out of cell `(p, q)`.
pub fn epsilon(p: usize, q: usize) -> i8 {
    let odd = p % 2 == 1;
    let negative = match q % 4 {
        0 | 3 => odd,
        _ => !odd,
    };
    if negative {
        -1
    } else {
        1
    }
}

fn need_levels(f: &DeltaRModule, needed: usize) -> Result<(), EngineError> {
    if f.max_level() < needed {
        return Err(EngineError::LevelTooLow {
            needed,
            available: f.max_level(),
        });
    }
    Ok(())
}

/// Bicomplex with every cell `(p, q)` equal to level `q` of `f`, horizontal
/// maps `1 + epsilon(p, q) R_q` and vertical maps the alternating face sum.
pub fn reflexive_bicomplex(f: &DeltaRModule, p_max: usize, q_max: usize) -> Result<Bicomplex, EngineError> {
    need_levels(f, q_max)?;
    let ring = f.ring();
    // each row only ever uses two horizontal maps
    let horizontal: Vec<[Arc<Matrix>; 2]> = (0..=q_max)
        .map(|q| {
            let id = Matrix::identity(f.rank(q));
            let r = f.involution(q);
            let plus = Arc::new(id.add(r).reduce(ring)?);
            let minus = Arc::new(id.sub(r).reduce(ring)?);
            Ok([plus, minus])
        })
        .collect::<Result<_, EngineError>>()?;
    let vertical: Vec<Arc<Matrix>> = (0..=q_max)
        .map(|q| {
            if q == 0 {
                Arc::new(Matrix::zeros(0, f.rank(0)))
            } else {
                Arc::new(f.boundary(q))
            }
        })
        .collect();
    Ok(Bicomplex::new(
        ring,
        p_max,
        q_max,
        |_, q| f.rank(q),
        |p, q| {
            let which = if epsilon(p, q) > 0 { 0 } else { 1 };
            horizontal[q][which].clone()
        },
        |_, q| vertical[q].clone(),
    )?)
}

/// `HR_n(f)` for `n <= n_max`.
pub fn hr(f: &DeltaRModule, n_max: usize) -> Result<Vec<HomologyGroup>, EngineError> {
    let b = reflexive_bicomplex(f, n_max + 1, n_max + 1)?;
    let tot = total_complex_upto(&b, n_max + 1)?;
    Ok(tot.homology_range(0, n_max)?)
}

/// The complex `b: F_n -> F_{n-1}` through level `top`.
pub fn hochschild_complex(f: &DeltaRModule, top: usize) -> Result<ChainComplex, EngineError> {
    need_levels(f, top)?;
    let ranks = (0..=top).map(|n| f.rank(n)).collect();
    let diffs = (1..=top).map(|n| f.boundary(n)).collect();
    Ok(ChainComplex::new(f.ring(), ranks, diffs)?)
}

pub fn hochschild_homology(f: &DeltaRModule, n_max: usize) -> Result<Vec<HomologyGroup>, EngineError> {
    Ok(hochschild_complex(f, n_max + 1)?.homology_range(0, n_max)?)
}

/// Homology of the quotient of the Hochschild complex by `1 - T_n`, where
/// `T_n = (-1)^{n(n+1)/2} R_n` is the involution commuting with `b`.
pub fn hr_quotient_of_module(f: &DeltaRModule, n_max: usize) -> Result<Vec<HomologyGroup>, EngineError> {
    let ring = f.ring();
    if !ring.two_invertible() {
        return Err(EngineError::TwoNotInvertible(ring));
    }
    let c = hochschild_complex(f, n_max + 1)?;
    let t: Vec<Matrix> = (0..=n_max + 1).map(|n| f.chain_involution(n)).collect();
    let q = quotient_by_involution(&c, &t, 1)?;
    Ok(q.homology_range(0, n_max)?)
}

/// `HR^{sign}(A, M)` through the quotient complex; needs 2 invertible.
pub fn hr_quotient_method(
    a: &InvolutiveAlgebra,
    m: &InvolutiveBimodule,
    sign: i8,
    n_max: usize,
) -> Result<Vec<HomologyGroup>, EngineError> {
    if !a.ring().two_invertible() {
        return Err(EngineError::TwoNotInvertible(a.ring()));
    }
    let f = loday_module(a, m, sign, n_max + 1)?;
    hr_quotient_of_module(&f, n_max)
}

/// Homology of `N <-(1-T)- N <-(1+T)- N <-(1-T)- ...` in degrees
/// `0..=n_max`.
pub fn c2_homology(t: &Matrix, n_max: usize, ring: Ring) -> Result<Vec<HomologyGroup>, EngineError> {
    let n = t.nrows();
    if t.shape() != (n, n) {
        return Err(EngineError::ShapeMismatch(format!("T is {:?}", t.shape())));
    }
    let t = t.reduce(ring)?;
    if !t.mul_in(&t, ring)?.is_identity() {
        return Err(EngineError::NotInvolution);
    }
    let id = Matrix::identity(n);
    let minus = id.sub(&t).reduce(ring)?;
    let plus = id.add(&t).reduce(ring)?;
    let diffs = (1..=n_max + 1)
        .map(|k| if k % 2 == 1 { minus.clone() } else { plus.clone() })
        .collect();
    let c = ChainComplex::new(ring, vec![n; n_max + 2], diffs)?;
    Ok(c.homology_range(0, n_max)?)
}

/// Row `q` of the reflexive bicomplex against `C_2` homology of level `q`
/// under `(-1)^{q(q+1)/2} R_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowCheck {
    pub q: usize,
    pub twist: i8,
    pub row: Vec<HomologyGroup>,
    pub c2: Vec<HomologyGroup>,
}

impl RowCheck {
    pub fn matches(&self) -> bool {
        self.row == self.c2
    }
}

pub fn row_homology_check(f: &DeltaRModule, q: usize, p_max: usize) -> Result<RowCheck, EngineError> {
    let p_max = p_max.max(1);
    let b = reflexive_bicomplex(f, p_max, q)?;
    let row = b.row(q)?.homology_range(0, p_max - 1)?;
    let twist: i8 = if (q * (q + 1) / 2).is_multiple_of(2) { 1 } else { -1 };
    let t = f.involution(q).scale(&if twist > 0 { Scalar::one() } else { -Scalar::one() });
    let c2 = c2_homology(&t, p_max - 1, f.ring())?;
    Ok(RowCheck { q, twist, row, c2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dual_numbers, gaussian_integers, ground_algebra};
    use crate::complexes::SquareRule;

    fn ground(ring: Ring, sign: i8, levels: usize) -> DeltaRModule {
        let k = ground_algebra(ring);
        loday_module(&k, &k.regular_bimodule(), sign, levels).unwrap()
    }

    fn shown(h: &[HomologyGroup]) -> Vec<String> {
        h.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn epsilon_table() {
        assert_eq!(epsilon(1, 0), -1);
        assert_eq!(epsilon(2, 0), 1);
        assert_eq!(epsilon(1, 1), 1);
        assert_eq!(epsilon(2, 1), -1);
        assert_eq!(epsilon(1, 3), -1);
        assert_eq!(epsilon(0, 2), -1);
    }

    #[test]
    fn ground_ring_bicomplex() {
        let f = ground(Ring::Integers, 1, 3);
        let b = reflexive_bicomplex(&f, 3, 3).unwrap();
        assert_eq!(b.square_rule(), SquareRule::Commute);
        for q in 0..=3 {
            let maps: Vec<Scalar> = (1..=3).map(|p| b.horizontal(p, q).unwrap().get(0, 0)).collect();
            assert!(maps.iter().any(|x| *x == Scalar::from_integer(2.into())));
            assert!(maps.iter().any(|x| *x == Scalar::from_integer(0.into())));
        }
        // row 1, p = 1 is 1 + R_1 = 2
        assert_eq!(b.horizontal(1, 1).unwrap().get(0, 0), Scalar::from_integer(2.into()));
        let tot = crate::complexes::total_complex(&b).unwrap();
        assert_eq!(shown(&tot.homology_range(0, 1).unwrap()), ["Z", "Z/2"]);
    }

    #[test]
    fn ground_ring_values() {
        assert_eq!(shown(&hr(&ground(Ring::Integers, 1, 4), 3).unwrap()), ["Z", "Z/2", "0", "Z/2"]);
        assert_eq!(shown(&hr(&ground(Ring::PrimeField(2), 1, 4), 3).unwrap()), ["F2"; 4]);
        assert_eq!(shown(&hr(&ground(Ring::Rationals, -1, 4), 3).unwrap()), ["0"; 4]);
    }

    #[test]
    fn single_column_is_hochschild() {
        let k = dual_numbers(Ring::Integers);
        let f = loday_module(&k, &k.regular_bimodule(), 1, 3).unwrap();
        let b = reflexive_bicomplex(&f, 0, 3).unwrap();
        let tot = total_complex_upto(&b, 3).unwrap();
        assert_eq!(tot.homology_range(0, 2).unwrap(), hochschild_homology(&f, 2).unwrap());
        assert_eq!(hochschild_homology(&f, 0).unwrap()[0], HomologyGroup::free(Ring::Integers, 2));
    }

    #[test]
    fn quotient_method_agrees() {
        for a in [ground_algebra(Ring::Rationals), gaussian_integers(Ring::Rationals), dual_numbers(Ring::Rationals)] {
            for sign in [1, -1] {
                let f = loday_module(&a, &a.regular_bimodule(), sign, 4).unwrap();
                assert_eq!(hr(&f, 3).unwrap(), hr_quotient_method(&a, &a.regular_bimodule(), sign, 3).unwrap());
            }
        }
        let z = ground_algebra(Ring::Integers);
        assert_eq!(
            hr_quotient_method(&z, &z.regular_bimodule(), 1, 2).unwrap_err(),
            EngineError::TwoNotInvertible(Ring::Integers)
        );
    }

    #[test]
    fn c2_examples() {
        let one = Matrix::identity(1);
        assert_eq!(shown(&c2_homology(&one, 3, Ring::Integers).unwrap()), ["Z", "Z/2", "0", "Z/2"]);
        assert_eq!(shown(&c2_homology(&one.neg(), 2, Ring::Integers).unwrap()), ["Z/2", "0", "Z/2"]);
        let swap = Matrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(shown(&c2_homology(&swap, 2, Ring::Integers).unwrap()), ["Z", "0", "0"]);
        let two = Matrix::from_rows(&[vec![2]]);
        assert_eq!(c2_homology(&two, 1, Ring::Rationals).unwrap_err(), EngineError::NotInvolution);
    }

    #[test]
    fn rows_match_twisted_c2_homology() {
        let f = ground(Ring::Integers, 1, 4);
        for q in 0..=4 {
            let check = row_homology_check(&f, q, 4).unwrap();
            assert!(check.matches(), "row {q}: {check:?}");
        }
        assert_eq!(row_homology_check(&f, 1, 3).unwrap().twist, -1);
        assert_eq!(row_homology_check(&f, 4, 3).unwrap().twist, 1);
    }
}
