use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::domain::{sparse_rows, with_field, Domain, IntegerDomain};
use super::echelon::{Echelon, SparseVec};
use super::eliminate::unit_pivot_elimination;
use super::snf::{dense_invariant_factors, snf};
use super::{LinalgError, Matrix, Ring};

/// Rank and non-unit invariant factors of an integer matrix.
///
/// Unit pivots are eliminated sparsely first; the leftover block goes
/// through the dense Smith normal form.
pub fn integer_invariant_factors(m: &Matrix) -> Result<(usize, Vec<BigInt>), LinalgError> {
    let m = m.reduce(Ring::Integers)?;
    let d = IntegerDomain;
    let elim = unit_pivot_elimination(&d, sparse_rows(&d, &m), m.ncols());
    if elim.residual.is_empty() {
        return Ok((elim.unit_pivots, Vec::new()));
    }
    // compress the residual onto the columns it actually touches
    let mut used: Vec<usize> = elim
        .residual
        .iter()
        .flat_map(|row| row.iter().map(|(c, _)| *c))
        .collect();
    used.sort_unstable();
    used.dedup();
    let index: BTreeMap<usize, usize> = used.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let dense: Vec<Vec<BigInt>> = elim
        .residual
        .iter()
        .map(|row| {
            let mut out = vec![BigInt::zero(); used.len()];
            for (c, v) in row {
                out[index[c]] = v.clone();
            }
            out
        })
        .collect();
    let factors = dense_invariant_factors(dense, used.len());
    let rank = elim.unit_pivots + factors.len();
    let non_units = factors.into_iter().filter(|f| !f.is_one()).collect();
    Ok((rank, non_units))
}

/// Exact rank over `ring`. Over the integers this is the rank over the
/// rationals.
pub fn rank(m: &Matrix, ring: Ring) -> Result<usize, LinalgError> {
    match ring {
        Ring::Integers => Ok(integer_invariant_factors(m)?.0),
        _ => {
            let m = m.reduce(ring)?;
            with_field!(ring, d => {
                let elim = unit_pivot_elimination(&d, sparse_rows(&d, &m), m.ncols());
                debug_assert!(elim.residual.is_empty());
                Ok(elim.unit_pivots)
            })
        }
    }
}

fn column_vectors<D: Domain>(d: &D, m: &Matrix) -> Vec<SparseVec<D::E>> {
    let mut cols: Vec<SparseVec<D::E>> = vec![SparseVec::new(); m.ncols()];
    for (i, j, v) in m.triplets() {
        let e = d.lift(v);
        if !d.is_zero(&e) {
            cols[j].insert(i, e);
        }
    }
    cols
}

fn matrix_from_sparse<D: Domain>(d: &D, rows: usize, cols: &[SparseVec<D::E>]) -> Matrix {
    Matrix::from_triplets(
        rows,
        cols.len(),
        cols.iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, d.lower(v))))
            .collect::<Vec<_>>(),
    )
}

/// Columns spanning the kernel of `m`.
///
/// Over the integers the columns form a basis of the full kernel lattice.
pub fn kernel_basis(m: &Matrix, ring: Ring) -> Result<Matrix, LinalgError> {
    let m = m.reduce(ring)?;
    if ring == Ring::Integers {
        let s = snf(&m);
        let r = s.rank();
        let cols: Vec<usize> = (r..m.ncols()).collect();
        return Ok(s.v.select_columns(&cols));
    }
    with_field!(ring, d => {
        let mut ech = Echelon::new(&d);
        let mut kernel = Vec::new();
        for (j, col) in column_vectors(&d, &m).into_iter().enumerate() {
            let tag: SparseVec<_> = [(j, d.one())].into_iter().collect();
            if let Some(dep) = ech.insert(col, tag) {
                kernel.push(dep);
            }
        }
        Ok(matrix_from_sparse(&d, m.ncols(), &kernel))
    })
}

/// Solves `basis * x = vectors` exactly.
pub fn express_in_basis(vectors: &Matrix, basis: &Matrix, ring: Ring) -> Result<Matrix, LinalgError> {
    if vectors.nrows() != basis.nrows() {
        return Err(LinalgError::ShapeMismatch(format!(
            "vectors have {} rows, basis has {}",
            vectors.nrows(),
            basis.nrows()
        )));
    }
    let vectors = vectors.reduce(ring)?;
    let basis = basis.reduce(ring)?;
    if ring == Ring::Integers {
        let s = snf(&basis);
        let r = s.rank();
        let y = s.u.mul(&vectors).to_dense_integers()?;
        let mut z = vec![vec![BigInt::zero(); vectors.ncols()]; basis.ncols()];
        for j in 0..vectors.ncols() {
            for (i, yrow) in y.iter().enumerate() {
                let yi = &yrow[j];
                if i < r {
                    let (q, rem) = yi.div_mod_floor(&s.invariant_factors[i]);
                    if !rem.is_zero() {
                        return Err(LinalgError::NotInSpan { column: j });
                    }
                    z[i][j] = q;
                } else if !yi.is_zero() {
                    return Err(LinalgError::NotInSpan { column: j });
                }
            }
        }
        let z = Matrix::from_dense_integers(basis.ncols(), vectors.ncols(), &z);
        return Ok(s.v.mul(&z));
    }
    with_field!(ring, d => {
        let mut ech = Echelon::new(&d);
        for (j, col) in column_vectors(&d, &basis).into_iter().enumerate() {
            let tag: SparseVec<_> = [(j, d.one())].into_iter().collect();
            ech.insert(col, tag);
        }
        let mut solution = Vec::with_capacity(vectors.ncols());
        for (j, mut v) in column_vectors(&d, &vectors).into_iter().enumerate() {
            let mut tag = SparseVec::new();
            ech.reduce(&mut v, &mut tag);
            if !v.is_empty() {
                return Err(LinalgError::NotInSpan { column: j });
            }
            let x: SparseVec<_> = tag.into_iter().map(|(k, c)| (k, d.neg(&c))).collect();
            solution.push(x);
        }
        Ok(matrix_from_sparse(&d, basis.ncols(), &solution))
    })
}

/// A free quotient `k^n / span(relations)` with explicit coordinates.
///
/// `proj` maps the ambient module onto the quotient, `section` lifts the
/// quotient basis back; `proj * section` is the identity and the kernel of
/// `proj` is exactly the span of the relations.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub ambient: usize,
    pub proj: Matrix,
    pub section: Matrix,
}

impl Presentation {
    pub fn rank(&self) -> usize {
        self.proj.nrows()
    }

    /// Matrix of the map induced on quotients by `f` (ambient to ambient of
    /// `target`). Does not check well-definedness.
    pub fn induced(&self, f: &Matrix, target: &Presentation) -> Matrix {
        target.proj.mul(f).mul(&self.section)
    }
}

/// Presents the cokernel of `relations` (columns are relations in an ambient
/// module of rank `relations.nrows()`).
///
/// Fails with [`LinalgError::TorsionInQuotient`] when the cokernel over the
/// integers is not free.
pub fn free_quotient(relations: &Matrix, ring: Ring) -> Result<Presentation, LinalgError> {
    let relations = relations.reduce(ring)?;
    let n = relations.nrows();
    if ring == Ring::Integers {
        let s = snf(&relations);
        let torsion: Vec<String> = s
            .invariant_factors
            .iter()
            .filter(|f| !f.is_one())
            .map(ToString::to_string)
            .collect();
        if !torsion.is_empty() {
            return Err(LinalgError::TorsionInQuotient(torsion));
        }
        let r = s.rank();
        let keep: Vec<usize> = (r..n).collect();
        return Ok(Presentation {
            ambient: n,
            proj: s.u.select_rows(&keep),
            section: s.u_inv.select_columns(&keep),
        });
    }
    with_field!(ring, d => {
        let mut ech = Echelon::new(&d);
        for col in column_vectors(&d, &relations) {
            ech.insert(col, SparseVec::new());
        }
        let pivots: std::collections::BTreeSet<usize> = ech.pivot_positions().collect();
        let complement: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
        let slot: BTreeMap<usize, usize> = complement.iter().enumerate().map(|(k, c)| (*c, k)).collect();
        let mut trip = Vec::new();
        for i in 0..n {
            let mut v: SparseVec<_> = [(i, d.one())].into_iter().collect();
            let mut tag = SparseVec::new();
            ech.reduce(&mut v, &mut tag);
            for (pos, val) in v {
                trip.push((slot[&pos], i, d.lower(&val)));
            }
        }
        let proj = Matrix::from_triplets(complement.len(), n, trip);
        let section = Matrix::from_triplets(
            n,
            complement.len(),
            complement.iter().enumerate().map(|(k, c)| (*c, k, BigRational::one())).collect::<Vec<_>>(),
        );
        Ok(Presentation { ambient: n, proj, section })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::identity(3), Ring::Integers).unwrap(), 3);
        assert_eq!(rank(&Matrix::from_rows(&[vec![2]]), Ring::PrimeField(2)).unwrap(), 0);
        assert_eq!(
            rank(&Matrix::from_rows(&[vec![1, 2], vec![2, 4]]), Ring::Rationals).unwrap(),
            1
        );
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Matrix::identity(2), Ring::Integers).unwrap().ncols(), 0);
        let k = kernel_basis(&Matrix::from_rows(&[vec![1, -1]]), Ring::Integers).unwrap();
        assert_eq!(k.ncols(), 1);
        let (a, b) = (k.get(0, 0), k.get(1, 0));
        assert_eq!(a, b);
        assert!(a.numer().magnitude().is_one());
        let z = kernel_basis(&Matrix::zeros(1, 1), Ring::Integers).unwrap();
        assert_eq!(z, Matrix::identity(1));
        let kq = kernel_basis(&Matrix::from_rows(&[vec![1, -1]]), Ring::Rationals).unwrap();
        assert!(Matrix::from_rows(&[vec![1, -1]]).mul(&kq).is_zero());
    }

    #[test]
    fn express_examples() {
        let basis = Matrix::from_rows(&[vec![2]]);
        let x = express_in_basis(&Matrix::from_rows(&[vec![4]]), &basis, Ring::Integers).unwrap();
        assert_eq!(x, Matrix::from_rows(&[vec![2]]));
        assert_eq!(
            express_in_basis(&Matrix::from_rows(&[vec![3]]), &basis, Ring::Integers).unwrap_err(),
            LinalgError::NotInSpan { column: 0 }
        );
        let b = Matrix::from_rows(&[vec![1, 0], vec![1, 1], vec![0, 1]]);
        for ring in [Ring::Integers, Ring::Rationals, Ring::PrimeField(3)] {
            assert!(express_in_basis(&b, &b, ring).unwrap().is_identity());
        }
    }

    #[test]
    fn quotient_of_plane_by_diagonal() {
        let rel = Matrix::from_rows(&[vec![1], vec![1]]);
        for ring in [Ring::Integers, Ring::Rationals, Ring::PrimeField(2)] {
            let p = free_quotient(&rel, ring).unwrap();
            assert_eq!(p.rank(), 1);
            assert!(p.proj.mul_in(&p.section, ring).unwrap().is_identity());
            assert!(p.proj.mul_in(&rel, ring).unwrap().is_zero());
        }
        let twice = Matrix::from_rows(&[vec![2]]);
        assert!(matches!(
            free_quotient(&twice, Ring::Integers),
            Err(LinalgError::TorsionInQuotient(_))
        ));
        assert_eq!(free_quotient(&twice, Ring::Rationals).unwrap().rank(), 0);
    }
}
