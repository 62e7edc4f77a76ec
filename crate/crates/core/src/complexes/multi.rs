//! Multicomplexes on a finite box of multidegrees and their totalization.

use std::sync::Arc;

use num_traits::One;

use crate::linalg::{Matrix, Ring, Scalar};

use super::{ChainComplex, ComplexError};

/// How the differentials of two directions interact on every square.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SquareRule {
    Commute,
    Anticommute,
}

/// Differential family lookup: `(axis, cell)` to the map out of `cell`
/// along `axis`, for cells with a positive coordinate on that axis.
pub type DifferentialFn<'a> = dyn Fn(usize, &[usize]) -> Arc<Matrix> + 'a;

/// Free modules on the box `[0, extent_0] x ... x [0, extent_{k-1}]` with one
/// square-zero differential family per axis, each lowering its own
/// coordinate by one.
#[derive(Clone, Debug)]
pub(crate) struct Grid {
    ring: Ring,
    extent: Vec<usize>,
    ranks: Vec<usize>,
    /// `maps[axis][flat]`: map out of the cell along `axis`.
    maps: Vec<Vec<Option<Arc<Matrix>>>>,
    /// `rules[i][j]` for `i < j`.
    rules: Vec<Vec<SquareRule>>,
}

impl Grid {
    fn flat(&self, cell: &[usize]) -> usize {
        cell.iter()
            .zip(&self.extent)
            .fold(0, |acc, (c, e)| acc * (e + 1) + c)
    }

    fn cells(extent: &[usize]) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for &e in extent {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=e).map(move |c| {
                        let mut v = prefix.clone();
                        v.push(c);
                        v
                    })
                })
                .collect();
        }
        out
    }

    pub fn build(
        ring: Ring,
        extent: Vec<usize>,
        rank: &dyn Fn(&[usize]) -> usize,
        map: &DifferentialFn<'_>,
    ) -> Result<Self, ComplexError> {
        let axes = extent.len();
        let cells = Grid::cells(&extent);
        let ranks: Vec<usize> = cells.iter().map(|c| rank(c)).collect();
        let mut grid = Grid {
            ring,
            extent,
            ranks,
            maps: vec![vec![None; cells.len()]; axes],
            rules: vec![vec![SquareRule::Commute; axes]; axes],
        };
        for cell in &cells {
            let idx = grid.flat(cell);
            for axis in 0..axes {
                if cell[axis] == 0 {
                    continue;
                }
                let mut below = cell.clone();
                below[axis] -= 1;
                let m = map(axis, cell);
                let expected = (grid.ranks[grid.flat(&below)], grid.ranks[idx]);
                if m.shape() != expected {
                    return Err(ComplexError::ShapeMismatch(format!(
                        "map along axis {axis} out of {cell:?} is {:?}, expected {expected:?}",
                        m.shape()
                    )));
                }
                grid.maps[axis][idx] = Some(Arc::new(m.reduce(ring)?));
            }
        }
        grid.verify(&cells)?;
        Ok(grid)
    }

    fn map(&self, axis: usize, cell: &[usize]) -> &Matrix {
        self.maps[axis][self.flat(cell)]
            .as_deref()
            .expect("map exists for positive coordinate")
    }

    fn verify(&mut self, cells: &[Vec<usize>]) -> Result<(), ComplexError> {
        let axes = self.extent.len();
        for cell in cells {
            for axis in 0..axes {
                if cell[axis] < 2 {
                    continue;
                }
                let mut below = cell.clone();
                below[axis] -= 1;
                let sq = self.map(axis, &below).mul_in(self.map(axis, cell), self.ring)?;
                if !sq.is_zero() {
                    return Err(ComplexError::SquareZeroViolation(format!(
                        "axis {axis} differential squares to nonzero at {cell:?}"
                    )));
                }
            }
        }
        for i in 0..axes {
            for j in i + 1..axes {
                let (mut can_commute, mut can_anti) = (true, true);
                for cell in cells {
                    if cell[i] == 0 || cell[j] == 0 {
                        continue;
                    }
                    let (mut ci, mut cj) = (cell.clone(), cell.clone());
                    ci[i] -= 1;
                    cj[j] -= 1;
                    let ji = self.map(j, &ci).mul(self.map(i, cell));
                    let ij = self.map(i, &cj).mul(self.map(j, cell));
                    if !ji.sub(&ij).reduce(self.ring)?.is_zero() {
                        can_commute = false;
                    }
                    if !ji.add(&ij).reduce(self.ring)?.is_zero() {
                        can_anti = false;
                    }
                    if !can_commute && !can_anti {
                        return Err(ComplexError::NoUniformSquareRule { axes: (i, j) });
                    }
                }
                self.rules[i][j] = if can_commute {
                    SquareRule::Commute
                } else {
                    SquareRule::Anticommute
                };
            }
        }
        Ok(())
    }

    pub fn rule(&self, i: usize, j: usize) -> SquareRule {
        self.rules[i][j]
    }

    pub fn rank(&self, cell: &[usize]) -> usize {
        self.ranks[self.flat(cell)]
    }

    pub fn differential(&self, axis: usize, cell: &[usize]) -> Option<&Matrix> {
        self.maps[axis][self.flat(cell)].as_deref()
    }

    /// Cells of total degree `n`, in lexicographic order.
    fn cells_of_degree(&self, n: usize) -> Vec<Vec<usize>> {
        Grid::cells(&self.extent)
            .into_iter()
            .filter(|c| c.iter().sum::<usize>() == n)
            .collect()
    }

    /// Total complex through degree `top`. The differential on a summand is
    /// the sum over axes of the axis map, twisted by `(-1)^{cell[i]}` for every
    /// earlier axis `i` whose squares commute with it.
    pub fn total(&self, top: usize) -> Result<ChainComplex, ComplexError> {
        let max_degree: usize = self.extent.iter().sum();
        let top = top.min(max_degree);
        let layers: Vec<Vec<Vec<usize>>> = (0..=top).map(|n| self.cells_of_degree(n)).collect();
        let offsets: Vec<Vec<usize>> = layers
            .iter()
            .map(|cells| {
                let mut acc = 0;
                cells
                    .iter()
                    .map(|c| {
                        let o = acc;
                        acc += self.rank(c);
                        o
                    })
                    .collect()
            })
            .collect();
        let ranks: Vec<usize> = layers
            .iter()
            .map(|cells| cells.iter().map(|c| self.rank(c)).sum())
            .collect();

        let mut diffs = Vec::with_capacity(top);
        for n in 1..=top {
            let mut trip = Vec::new();
            for (cell, &src_off) in layers[n].iter().zip(&offsets[n]) {
                for axis in 0..self.extent.len() {
                    if cell[axis] == 0 {
                        continue;
                    }
                    let mut target = cell.clone();
                    target[axis] -= 1;
                    let pos = layers[n - 1]
                        .iter()
                        .position(|c| *c == target)
                        .expect("target cell in lower layer");
                    let dst_off = offsets[n - 1][pos];
                    let flips = (0..axis)
                        .filter(|&i| self.rules[i][axis] == SquareRule::Commute)
                        .map(|i| cell[i])
                        .sum::<usize>();
                    let sign = if flips % 2 == 0 { Scalar::one() } else { -Scalar::one() };
                    for (r, c, v) in self.map(axis, cell).triplets() {
                        trip.push((dst_off + r, src_off + c, v * &sign));
                    }
                }
            }
            diffs.push(Matrix::from_triplets(ranks[n - 1], ranks[n], trip));
        }
        ChainComplex::new(self.ring, ranks, diffs)
    }
}

/// Double complex with horizontal maps `(p, q) -> (p - 1, q)` and vertical
/// maps `(p, q) -> (p, q - 1)`.
#[derive(Clone, Debug)]
pub struct Bicomplex {
    grid: Grid,
}

impl Bicomplex {
    /// Builds and verifies a bicomplex on `[0, p_max] x [0, q_max]`.
    /// `horizontal(p, q)` is called for `p >= 1`, `vertical(p, q)` for `q >= 1`.
    pub fn new(
        ring: Ring,
        p_max: usize,
        q_max: usize,
        rank: impl Fn(usize, usize) -> usize,
        horizontal: impl Fn(usize, usize) -> Arc<Matrix>,
        vertical: impl Fn(usize, usize) -> Arc<Matrix>,
    ) -> Result<Self, ComplexError> {
        let grid = Grid::build(
            ring,
            vec![p_max, q_max],
            &|c: &[usize]| rank(c[0], c[1]),
            &|axis, c: &[usize]| {
                if axis == 0 {
                    horizontal(c[0], c[1])
                } else {
                    vertical(c[0], c[1])
                }
            },
        )?;
        Ok(Bicomplex { grid })
    }

    pub fn ring(&self) -> Ring {
        self.grid.ring
    }

    pub fn extent(&self) -> (usize, usize) {
        (self.grid.extent[0], self.grid.extent[1])
    }

    pub fn square_rule(&self) -> SquareRule {
        self.grid.rule(0, 1)
    }

    pub fn rank(&self, p: usize, q: usize) -> usize {
        self.grid.rank(&[p, q])
    }

    pub fn horizontal(&self, p: usize, q: usize) -> Option<&Matrix> {
        self.grid.differential(0, &[p, q])
    }

    pub fn vertical(&self, p: usize, q: usize) -> Option<&Matrix> {
        self.grid.differential(1, &[p, q])
    }

    /// Row `q` as a chain complex in the horizontal direction.
    pub fn row(&self, q: usize) -> Result<ChainComplex, ComplexError> {
        let (p_max, _) = self.extent();
        let ranks = (0..=p_max).map(|p| self.rank(p, q)).collect();
        let diffs = (1..=p_max)
            .map(|p| self.horizontal(p, q).expect("horizontal map").clone())
            .collect();
        ChainComplex::new(self.ring(), ranks, diffs)
    }

    /// Column `p` as a chain complex in the vertical direction.
    pub fn column(&self, p: usize) -> Result<ChainComplex, ComplexError> {
        let (_, q_max) = self.extent();
        let ranks = (0..=q_max).map(|q| self.rank(p, q)).collect();
        let diffs = (1..=q_max)
            .map(|q| self.vertical(p, q).expect("vertical map").clone())
            .collect();
        ChainComplex::new(self.ring(), ranks, diffs)
    }
}

/// Triple complex; the three families lower `p`, `q` and `s` respectively.
#[derive(Clone, Debug)]
pub struct Tricomplex {
    grid: Grid,
}

impl Tricomplex {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        ring: Ring,
        extent: (usize, usize, usize),
        rank: impl Fn(usize, usize, usize) -> usize,
        first: impl Fn(usize, usize, usize) -> Arc<Matrix>,
        second: impl Fn(usize, usize, usize) -> Arc<Matrix>,
        third: impl Fn(usize, usize, usize) -> Arc<Matrix>,
    ) -> Result<Self, ComplexError> {
        let grid = Grid::build(
            ring,
            vec![extent.0, extent.1, extent.2],
            &|c: &[usize]| rank(c[0], c[1], c[2]),
            &|axis, c: &[usize]| match axis {
                0 => first(c[0], c[1], c[2]),
                1 => second(c[0], c[1], c[2]),
                _ => third(c[0], c[1], c[2]),
            },
        )?;
        Ok(Tricomplex { grid })
    }

    /// The bicomplex viewed as a tricomplex with a trivial third direction.
    pub fn from_bicomplex(b: &Bicomplex) -> Tricomplex {
        let mut extent = b.grid.extent.clone();
        extent.push(0);
        let maps = b.grid.maps.iter().cloned().chain(std::iter::once(vec![None; b.grid.ranks.len()])).collect();
        let mut rules = vec![vec![SquareRule::Commute; 3]; 3];
        rules[0][1] = b.grid.rule(0, 1);
        Tricomplex {
            grid: Grid {
                ring: b.grid.ring,
                extent,
                ranks: b.grid.ranks.clone(),
                maps,
                rules,
            },
        }
    }

    pub fn ring(&self) -> Ring {
        self.grid.ring
    }

    pub fn square_rule(&self, i: usize, j: usize) -> SquareRule {
        self.grid.rule(i.min(j), i.max(j))
    }

    pub fn rank(&self, p: usize, q: usize, s: usize) -> usize {
        self.grid.rank(&[p, q, s])
    }
}

/// Total complex, summands of each degree ordered by increasing `p`.
pub fn total_complex(b: &Bicomplex) -> Result<ChainComplex, ComplexError> {
    let (p, q) = b.extent();
    b.grid.total(p + q)
}

/// Total complex truncated at degree `top`.
pub fn total_complex_upto(b: &Bicomplex, top: usize) -> Result<ChainComplex, ComplexError> {
    b.grid.total(top)
}

pub fn total_complex_3(t: &Tricomplex) -> Result<ChainComplex, ComplexError> {
    let top = t.grid.extent.iter().sum();
    t.grid.total(top)
}

pub fn total_complex_3_upto(t: &Tricomplex, top: usize) -> Result<ChainComplex, ComplexError> {
    t.grid.total(top)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::HomologyGroup;

    fn one() -> Arc<Matrix> {
        Arc::new(Matrix::identity(1))
    }

    fn square(h: i64, v: i64, ring: Ring) -> Result<Bicomplex, ComplexError> {
        // one-dimensional cells on [0,1]^2; horizontal maps 1, vertical v or h
        Bicomplex::new(
            ring,
            1,
            1,
            |_, _| 1,
            |_, _| one(),
            move |p, _| Arc::new(Matrix::from_rows(&[vec![if p == 0 { 1 } else { h * v }]])),
        )
    }

    #[test]
    fn commuting_square_is_acyclic() {
        let b = square(1, 1, Ring::Integers).unwrap();
        assert_eq!(b.square_rule(), SquareRule::Commute);
        let t = total_complex(&b).unwrap();
        assert_eq!(t.ranks(), &[1, 2, 1]);
        for n in 0..2 {
            assert!(t.homology(n).unwrap().is_zero());
        }
    }

    #[test]
    fn anticommuting_square_totalizes_without_twist() {
        let b = square(-1, 1, Ring::Integers).unwrap();
        assert_eq!(b.square_rule(), SquareRule::Anticommute);
        let t = total_complex(&b).unwrap();
        assert!(t.homology(1).unwrap().is_zero());
    }

    #[test]
    fn mixed_squares_are_rejected() {
        // cells (1,1) and (1,2) see different rules
        let err = Bicomplex::new(
            Ring::Integers,
            1,
            2,
            |_, q| if q == 1 { 2 } else { 1 },
            |_, q| Arc::new(if q == 1 { Matrix::identity(2) } else { Matrix::identity(1) }),
            |p, q| {
                Arc::new(match (p, q) {
                    (0, 1) => Matrix::from_rows(&[vec![1, 0]]),
                    (0, 2) => Matrix::from_rows(&[vec![0], vec![1]]),
                    (1, 1) => Matrix::from_rows(&[vec![1, 0]]),
                    _ => Matrix::from_rows(&[vec![0], vec![-1]]),
                })
            },
        )
        .unwrap_err();
        assert_eq!(err, ComplexError::NoUniformSquareRule { axes: (0, 1) });
    }

    #[test]
    fn rows_and_columns() {
        let b = square(1, 1, Ring::Rationals).unwrap();
        assert_eq!(b.row(0).unwrap().homology(0).unwrap(), HomologyGroup::zero(Ring::Rationals));
        assert!(b.column(1).unwrap().differential(1).is_identity());
    }

    #[test]
    fn truncation_keeps_low_degrees() {
        let b = square(1, 1, Ring::Integers).unwrap();
        let t = total_complex_upto(&b, 1).unwrap();
        assert_eq!(t.ranks(), &[1, 2]);
    }

    #[test]
    fn cube_of_identities() {
        let t = Tricomplex::new(Ring::Integers, (1, 1, 1), |_, _, _| 1, |_, _, _| one(), |_, _, _| one(), |_, _, _| one())
            .unwrap();
        assert_eq!(t.square_rule(2, 0), SquareRule::Commute);
        let c = total_complex_3(&t).unwrap();
        assert_eq!(c.ranks(), &[1, 3, 3, 1]);
        for n in 0..3 {
            assert!(c.homology(n).unwrap().is_zero());
        }
        let b = square(1, 1, Ring::Integers).unwrap();
        let lifted = total_complex_3(&Tricomplex::from_bicomplex(&b)).unwrap();
        assert_eq!(lifted.ranks(), total_complex(&b).unwrap().ranks());
    }
}
