use num_traits::One;

use crate::linalg::{free_quotient, Matrix, Presentation, Scalar};

use super::{ChainComplex, ComplexError};

/// The complex `C_n / im(1 - sign * r_n)`, where `r` is an involution on
/// each degree commuting with the differentials. Over a ring with 2
/// invertible this is the complex of `sign`-eigenvectors.
pub fn quotient_by_involution(c: &ChainComplex, r: &[Matrix], sign: i8) -> Result<ChainComplex, ComplexError> {
    let ring = c.ring();
    if !ring.two_invertible() {
        return Err(ComplexError::TwoNotInvertible(ring));
    }
    let top = c.top_degree();
    if r.len() != top + 1 {
        return Err(ComplexError::ShapeMismatch(format!(
            "need {} involutions, got {}",
            top + 1,
            r.len()
        )));
    }
    let s = if sign < 0 { -Scalar::one() } else { Scalar::one() };
    let mut pres: Vec<Presentation> = Vec::with_capacity(top + 1);
    let mut relations = Vec::with_capacity(top + 1);
    for (n, rn) in r.iter().enumerate() {
        let dim = c.rank(n);
        if rn.shape() != (dim, dim) {
            return Err(ComplexError::ShapeMismatch(format!(
                "involution in degree {n} is {:?}, expected {dim}x{dim}",
                rn.shape()
            )));
        }
        if !rn.mul_in(rn, ring)?.is_identity() {
            return Err(ComplexError::NotInvolution { degree: n });
        }
        let rel = Matrix::identity(dim).sub(&rn.scale(&s)).reduce(ring)?;
        pres.push(free_quotient(&rel, ring)?);
        relations.push(rel);
    }
    let mut diffs = Vec::with_capacity(top);
    for n in 1..=top {
        let d = c.differential(n);
        if !pres[n - 1].proj.mul(d).mul_in(&relations[n], ring)?.is_zero() {
            return Err(ComplexError::IllDefinedDifferential { degree: n });
        }
        diffs.push(pres[n].induced(d, &pres[n - 1]).reduce(ring)?);
    }
    ChainComplex::new(ring, pres.iter().map(Presentation::rank).collect(), diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Ring;

    fn swap() -> Matrix {
        Matrix::from_rows(&[vec![0, 1], vec![1, 0]])
    }

    #[test]
    fn swap_quotient_has_half_rank() {
        let c = ChainComplex::new(Ring::Rationals, vec![2, 2], vec![Matrix::identity(2)]).unwrap();
        let r = vec![swap(), swap()];
        let plus = quotient_by_involution(&c, &r, 1).unwrap();
        assert_eq!(plus.ranks(), &[1, 1]);
        assert!(plus.differential(1).is_identity());
        let minus = quotient_by_involution(&c, &r, -1).unwrap();
        assert_eq!(minus.ranks(), &[1, 1]);
    }

    #[test]
    fn integers_are_rejected() {
        let c = ChainComplex::new(Ring::Integers, vec![1], vec![]).unwrap();
        assert!(matches!(
            quotient_by_involution(&c, &[Matrix::identity(1)], 1),
            Err(ComplexError::TwoNotInvertible(_))
        ));
    }

    #[test]
    fn non_chain_map_is_rejected() {
        // d = [1 0] does not commute with the swap on C_1
        let c = ChainComplex::new(Ring::Rationals, vec![1, 2], vec![Matrix::from_rows(&[vec![1, 0]])]).unwrap();
        let err = quotient_by_involution(&c, &[Matrix::identity(1), swap()], 1).unwrap_err();
        assert_eq!(err, ComplexError::IllDefinedDifferential { degree: 1 });
        let bad = Matrix::from_rows(&[vec![2]]);
        let c0 = ChainComplex::new(Ring::Rationals, vec![1], vec![]).unwrap();
        assert_eq!(
            quotient_by_involution(&c0, &[bad], 1).unwrap_err(),
            ComplexError::NotInvolution { degree: 0 }
        );
    }
}
