use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::snf::snf;
use super::solve::{express_in_basis, integer_invariant_factors, kernel_basis, rank};
use super::{LinalgError, Matrix, Ring};

/// A finitely generated module presented as free part plus invariant factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub ring: Ring,
    pub free_rank: usize,
    /// Invariant factors greater than one, each dividing the next. Always
    /// empty over a field.
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn zero(ring: Ring) -> Self {
        HomologyGroup {
            ring,
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(ring: Ring, free_rank: usize) -> Self {
        HomologyGroup {
            ring,
            free_rank,
            torsion: Vec::new(),
        }
    }

    /// Builds a group from arbitrary cyclic torsion orders, normalizing them
    /// into invariant-factor form.
    pub fn new(ring: Ring, free_rank: usize, cyclic_orders: &[u64]) -> Self {
        let g = HomologyGroup {
            ring,
            free_rank,
            torsion: Vec::new(),
        };
        if ring.is_field() {
            return g;
        }
        let entries: Vec<BigRational> = cyclic_orders
            .iter()
            .map(|&d| BigRational::from_integer(BigInt::from(d)))
            .collect();
        let s = snf(&Matrix::diagonal(&entries));
        let torsion = s
            .invariant_factors
            .iter()
            .filter(|f| !f.is_one())
            .map(|f| f.to_u64().expect("factor of u64 inputs fits"))
            .collect();
        HomologyGroup { torsion, ..g }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &HomologyGroup) -> HomologyGroup {
        assert_eq!(self.ring, other.ring, "direct sum across rings");
        let orders: Vec<u64> = self.torsion.iter().chain(&other.torsion).copied().collect();
        HomologyGroup::new(self.ring, self.free_rank + other.free_rank, &orders)
    }

    /// Number of torsion factors divisible by `p`.
    pub fn torsion_divisible_by(&self, p: u64) -> usize {
        self.torsion.iter().filter(|&&t| t % p == 0).count()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let sym = self.ring.symbol();
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push(sym.clone()),
            r => parts.push(format!("{sym}^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        f.write_str(&parts.join(" + "))
    }
}

fn to_torsion(factors: Vec<BigInt>) -> Result<Vec<u64>, LinalgError> {
    factors
        .into_iter()
        .map(|f| f.to_u64().ok_or_else(|| LinalgError::Overflow(f.to_string())))
        .collect()
}

fn check_pair(d_out: &Matrix, d_in: &Matrix, ring: Ring) -> Result<(), LinalgError> {
    if d_out.ncols() != d_in.nrows() {
        return Err(LinalgError::ShapeMismatch(format!(
            "outgoing differential has {} columns, incoming has {} rows",
            d_out.ncols(),
            d_in.nrows()
        )));
    }
    if !d_out.mul_in(d_in, ring)?.is_zero() {
        return Err(LinalgError::CompositionNonzero);
    }
    Ok(())
}

/// Homology `ker(d_out) / im(d_in)` at the module both maps meet.
///
/// Over the integers the torsion is read off the invariant factors of
/// `d_in`: the quotient of the ambient lattice by `ker(d_out)` embeds in a
/// free module, so the torsion of `coker(d_in)` is exactly that of the
/// homology. [`homology_via_kernel_lattice`] computes the same group through
/// an explicit kernel basis.
pub fn homology_of_pair(d_out: &Matrix, d_in: &Matrix, ring: Ring) -> Result<HomologyGroup, LinalgError> {
    check_pair(d_out, d_in, ring)?;
    let ambient = d_in.nrows();
    let rank_out = rank(d_out, ring)?;
    match ring {
        Ring::Integers => {
            let (rank_in, factors) = integer_invariant_factors(d_in)?;
            Ok(HomologyGroup {
                ring,
                free_rank: ambient - rank_out - rank_in,
                torsion: to_torsion(factors)?,
            })
        }
        _ => {
            let rank_in = rank(d_in, ring)?;
            Ok(HomologyGroup::free(ring, ambient - rank_out - rank_in))
        }
    }
}

/// Homology through a kernel basis `K` of `d_out`, the coordinates `X` of
/// `d_in` in that basis and the Smith normal form of `X`.
pub fn homology_via_kernel_lattice(
    d_out: &Matrix,
    d_in: &Matrix,
    ring: Ring,
) -> Result<HomologyGroup, LinalgError> {
    check_pair(d_out, d_in, ring)?;
    let k = kernel_basis(d_out, ring)?;
    let x = express_in_basis(d_in, &k, ring)?;
    match ring {
        Ring::Integers => {
            let s = snf(&x);
            let factors: Vec<BigInt> = s.invariant_factors.iter().filter(|f| !f.is_one()).cloned().collect();
            Ok(HomologyGroup {
                ring,
                free_rank: k.ncols() - s.rank(),
                torsion: to_torsion(factors)?,
            })
        }
        _ => Ok(HomologyGroup::free(ring, k.ncols() - rank(&x, ring)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(free: usize, t: &[u64]) -> HomologyGroup {
        HomologyGroup::new(Ring::Integers, free, t)
    }

    #[test]
    fn cokernel_of_two() {
        let h = homology_of_pair(&Matrix::zeros(1, 1), &Matrix::from_rows(&[vec![2]]), Ring::Integers).unwrap();
        assert_eq!(h, z(0, &[2]));
    }

    #[test]
    fn projective_plane_middle_degree() {
        // cellular chain complex of RP^2: Z <-0- Z <-2- Z
        let d1 = Matrix::from_rows(&[vec![0]]);
        let d2 = Matrix::from_rows(&[vec![2]]);
        assert_eq!(homology_of_pair(&d1, &d2, Ring::Integers).unwrap(), z(0, &[2]));
        assert_eq!(homology_via_kernel_lattice(&d1, &d2, Ring::Integers).unwrap(), z(0, &[2]));
    }

    #[test]
    fn empty_maps_leave_everything() {
        let h = homology_of_pair(&Matrix::zeros(0, 3), &Matrix::zeros(3, 0), Ring::Rationals).unwrap();
        assert_eq!(h, HomologyGroup::free(Ring::Rationals, 3));
    }

    #[test]
    fn nonzero_composition_is_rejected() {
        let one = Matrix::identity(1);
        assert_eq!(
            homology_of_pair(&one, &one, Ring::Integers).unwrap_err(),
            LinalgError::CompositionNonzero
        );
    }

    #[test]
    fn torsion_normalizes() {
        assert_eq!(z(0, &[2, 3]).torsion, vec![6]);
        assert_eq!(z(1, &[4, 2, 1]).torsion, vec![2, 4]);
        assert_eq!(z(1, &[2]).direct_sum(&z(0, &[2])).to_string(), "Z + Z/2 + Z/2");
        assert_eq!(HomologyGroup::zero(Ring::PrimeField(2)).to_string(), "0");
    }
}
