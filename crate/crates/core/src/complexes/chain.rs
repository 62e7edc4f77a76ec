use crate::linalg::{homology_of_pair, HomologyGroup, Matrix, Ring};

use super::ComplexError;

/// Bounded chain complex of free modules in degrees `0..=top`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    ring: Ring,
    ranks: Vec<usize>,
    /// `diffs[n]` is `d_n: C_n -> C_{n-1}`; `diffs[0]` is the zero map
    /// `C_0 -> 0`.
    diffs: Vec<Matrix>,
}

impl ChainComplex {
    /// `differentials[i]` is `d_{i+1}`. Verifies shapes and `d_n d_{n+1} = 0`.
    pub fn new(ring: Ring, ranks: Vec<usize>, differentials: Vec<Matrix>) -> Result<Self, ComplexError> {
        if ranks.is_empty() {
            return Err(ComplexError::ShapeMismatch("a complex needs degree 0".into()));
        }
        if differentials.len() + 1 != ranks.len() {
            return Err(ComplexError::ShapeMismatch(format!(
                "{} ranks need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                differentials.len()
            )));
        }
        let mut diffs = Vec::with_capacity(ranks.len());
        diffs.push(Matrix::zeros(0, ranks[0]));
        for (i, d) in differentials.into_iter().enumerate() {
            let n = i + 1;
            if d.shape() != (ranks[n - 1], ranks[n]) {
                return Err(ComplexError::ShapeMismatch(format!(
                    "d_{n} is {}x{}, expected {}x{}",
                    d.nrows(),
                    d.ncols(),
                    ranks[n - 1],
                    ranks[n]
                )));
            }
            diffs.push(d.reduce(ring)?);
        }
        for n in 1..ranks.len().saturating_sub(1) {
            if !diffs[n].mul_in(&diffs[n + 1], ring)?.is_zero() {
                return Err(ComplexError::SquareZeroViolation(format!("d_{n} d_{} != 0", n + 1)));
            }
        }
        Ok(ChainComplex { ring, ranks, diffs })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `d_n`; degree 0 gives the zero map out of `C_0`.
    pub fn differential(&self, n: usize) -> &Matrix {
        &self.diffs[n]
    }

    pub fn homology(&self, n: usize) -> Result<HomologyGroup, ComplexError> {
        if n + 1 > self.top_degree() {
            return Err(ComplexError::DegreeOutOfRange {
                requested: n,
                available: self.top_degree().saturating_sub(1),
            });
        }
        Ok(homology_of_pair(&self.diffs[n], &self.diffs[n + 1], self.ring)?)
    }

    /// `H_n` for `n` in `n_min..=n_max`; needs the complex stored through
    /// degree `n_max + 1`.
    pub fn homology_range(&self, n_min: usize, n_max: usize) -> Result<Vec<HomologyGroup>, ComplexError> {
        (n_min..=n_max).map(|n| self.homology(n)).collect()
    }
}

/// Free function form of [`ChainComplex::homology_range`].
pub fn homology_range(c: &ChainComplex, n_min: usize, n_max: usize) -> Result<Vec<HomologyGroup>, ComplexError> {
    c.homology_range(n_min, n_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle() {
        let c = ChainComplex::new(
            Ring::Integers,
            vec![1, 1, 0],
            vec![Matrix::zeros(1, 1), Matrix::zeros(1, 0)],
        )
        .unwrap();
        let h = c.homology_range(0, 1).unwrap();
        assert_eq!(h, vec![HomologyGroup::free(Ring::Integers, 1); 2]);
    }

    #[test]
    fn projective_plane() {
        let c = ChainComplex::new(
            Ring::Integers,
            vec![1, 1, 1, 0],
            vec![
                Matrix::zeros(1, 1),
                Matrix::from_rows(&[vec![2]]),
                Matrix::zeros(1, 0),
            ],
        )
        .unwrap();
        let h = c.homology_range(0, 2).unwrap();
        let shown: Vec<String> = h.iter().map(ToString::to_string).collect();
        assert_eq!(shown, vec!["Z", "Z/2", "0"]);
    }

    #[test]
    fn exact_complex_is_acyclic() {
        // 0 <- Z <-1- Z <-0- Z <-1- Z <- 0
        let one = Matrix::identity(1);
        let c = ChainComplex::new(
            Ring::Integers,
            vec![1, 1, 1, 1, 0],
            vec![one.clone(), Matrix::zeros(1, 1), one, Matrix::zeros(1, 0)],
        )
        .unwrap();
        assert!(c.homology_range(0, 3).unwrap().iter().all(HomologyGroup::is_zero));
    }

    #[test]
    fn rejects_non_complex() {
        let one = Matrix::identity(1);
        let err = ChainComplex::new(Ring::Integers, vec![1, 1, 1], vec![one.clone(), one]).unwrap_err();
        assert!(matches!(err, ComplexError::SquareZeroViolation(_)));
    }

    #[test]
    fn out_of_range_degree() {
        let c = ChainComplex::new(Ring::Rationals, vec![1], vec![]).unwrap();
        assert!(matches!(c.homology(0), Err(ComplexError::DegreeOutOfRange { .. })));
    }
}
