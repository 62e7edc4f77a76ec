use crate::linalg::{free_quotient, Matrix, Presentation, Scalar};

use super::{AlgebraError, Bimodule, InvolutiveAlgebra};

/// `X (x)_A Y` presented as a quotient of the plain tensor product, whose
/// basis `x (x) y` has index `x * rank(Y) + y`.
#[derive(Clone, Debug)]
pub struct BalancedTensor {
    pub module: Bimodule,
    pub presentation: Presentation,
}

/// Balanced tensor product of `left` (right `A`-module) and `right` (left
/// `A`-module), carrying the outer actions of both factors.
pub fn tensor_over_algebra(left: &Bimodule, right: &Bimodule, a: &InvolutiveAlgebra) -> Result<BalancedTensor, AlgebraError> {
    if left.right_rank() != a.rank() || right.left_rank() != a.rank() {
        return Err(AlgebraError::ShapeMismatch(
            "inner actions do not match the algebra".into(),
        ));
    }
    let ring = a.ring();
    let (rx, ry) = (left.rank(), right.rank());
    let mut relations = Vec::new();
    for x in 0..rx {
        for k in 0..a.rank() {
            for y in 0..ry {
                let mut col: Vec<(usize, Scalar)> = left
                    .right_action(x, k)
                    .iter()
                    .map(|(x2, v)| (x2 * ry + y, v.clone()))
                    .collect();
                col.extend(right.left_action(k, y).iter().map(|(y2, v)| (x * ry + y2, -v.clone())));
                relations.push(super::sparse::collect(ring, col));
            }
        }
    }
    let rel = Matrix::from_columns(rx * ry, &relations);
    let pres = free_quotient(&rel, ring)?;
    let lefts: Vec<Matrix> = (0..left.left_rank())
        .map(|i| pres.induced(&left.left_matrix(i).kron(&Matrix::identity(ry)), &pres).reduce(ring))
        .collect::<Result<_, _>>()?;
    let rights: Vec<Matrix> = (0..right.right_rank())
        .map(|j| pres.induced(&Matrix::identity(rx).kron(&right.right_matrix(j)), &pres).reduce(ring))
        .collect::<Result<_, _>>()?;
    let labels = (0..pres.rank()).map(|k| format!("t{k}")).collect();
    let module = Bimodule::from_matrices(ring, labels, &lefts, &rights)?;
    Ok(BalancedTensor {
        module,
        presentation: pres,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{group_algebra, ground_algebra};
    use crate::groups::FiniteGroup;
    use crate::linalg::Ring;

    #[test]
    fn algebra_over_itself() {
        for ring in [Ring::Integers, Ring::Rationals] {
            let a = group_algebra(&FiniteGroup::cyclic(3), ring);
            let reg = a.regular_bimodule();
            let t = tensor_over_algebra(reg.module(), reg.module(), &a).unwrap();
            assert_eq!(t.module.rank(), 3);
            assert!(t.module.validate(&a, &a).is_empty());
        }
    }

    #[test]
    fn ground_ring_tensor_is_identity() {
        let k = ground_algebra(Ring::Integers);
        let v = Bimodule::from_matrices(
            Ring::Integers,
            vec!["v0".into(), "v1".into()],
            &[Matrix::identity(2)],
            &[Matrix::identity(2)],
        )
        .unwrap();
        let t = tensor_over_algebra(k.regular_bimodule().module(), &v, &k).unwrap();
        assert_eq!(t.module.rank(), 2);
    }

    #[test]
    fn group_ring_with_trivial_module() {
        let a = group_algebra(&FiniteGroup::cyclic(2), Ring::Integers);
        let triv = Bimodule::from_matrices(
            Ring::Integers,
            vec!["1".into()],
            &[Matrix::identity(1), Matrix::identity(1)],
            &[Matrix::identity(1), Matrix::identity(1)],
        )
        .unwrap();
        assert!(triv.validate(&a, &a).is_empty());
        let t = tensor_over_algebra(a.regular_bimodule().module(), &triv, &a).unwrap();
        assert_eq!(t.module.rank(), 1);
    }
}
