use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ring::{Ring, Scalar};
use super::LinalgError;

/// Sparse exact matrix stored row-major.
///
/// Each row holds `(column, value)` pairs sorted by column with no zero
/// values, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Scalar)>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, Scalar::one())]).collect();
        Matrix {
            rows: n,
            cols: n,
            data,
        }
    }

    /// Builds a matrix from `(row, col, value)` triplets. Repeated positions
    /// are summed; cancelled entries are dropped.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            assert!(
                r < rows && c < cols,
                "entry ({r}, {c}) outside a {rows}x{cols} matrix"
            );
            if !v.is_zero() {
                buckets[r].push((c, v));
            }
        }
        let data = buckets.into_iter().map(compress_row).collect();
        Matrix { rows, cols, data }
    }

    /// Dense constructor, mostly for tests and small literal data.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let triplets = rows.iter().enumerate().flat_map(|(i, row)| {
            assert_eq!(row.len(), ncols, "ragged dense rows");
            row.iter()
                .enumerate()
                .map(move |(j, v)| (i, j, BigRational::from_integer(v.clone().into())))
        });
        Matrix::from_triplets(nrows, ncols, triplets)
    }

    /// Column matrix from a dense vector.
    pub fn column_vector<T: Into<BigInt> + Clone>(v: &[T]) -> Self {
        let rows: Vec<Vec<T>> = v.iter().map(|x| vec![x.clone()]).collect();
        if rows.is_empty() {
            return Matrix::zeros(0, 1);
        }
        Matrix::from_rows(&rows)
    }

    /// Square diagonal matrix.
    pub fn diagonal(entries: &[Scalar]) -> Self {
        let n = entries.len();
        Matrix::from_triplets(n, n, entries.iter().cloned().enumerate().map(|(i, v)| (i, i, v)))
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self
                .data
                .iter()
                .enumerate()
                .all(|(i, row)| row.len() == 1 && row[0].0 == i && row[0].1.is_one())
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self.data[r].binary_search_by_key(&c, |(j, _)| *j) {
            Ok(pos) => self.data[r][pos].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn row(&self, r: usize) -> &[(usize, Scalar)] {
        &self.data[r]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[(usize, Scalar)]> {
        self.data.iter().map(Vec::as_slice)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn transpose(&self) -> Matrix {
        let mut data: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.cols];
        for (i, j, v) in self.triplets() {
            data[j].push((i, v.clone()));
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Columns of the matrix as sparse vectors.
    pub fn columns(&self) -> Vec<Vec<(usize, Scalar)>> {
        self.transpose().data
    }

    pub fn from_columns(rows: usize, columns: &[Vec<(usize, Scalar)>]) -> Matrix {
        Matrix::from_triplets(
            rows,
            columns.len(),
            columns
                .iter()
                .enumerate()
                .flat_map(|(j, col)| col.iter().map(move |(i, v)| (*i, j, v.clone()))),
        )
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut acc: Vec<Option<Scalar>> = vec![None; other.cols];
        let mut touched: Vec<usize> = Vec::new();
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            for (k, a) in row {
                for (j, b) in &other.data[*k] {
                    let prod = a * b;
                    match &mut acc[*j] {
                        Some(x) => *x += prod,
                        slot @ None => {
                            *slot = Some(prod);
                            touched.push(*j);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let mut out = Vec::with_capacity(touched.len());
            for &j in &touched {
                let v = acc[j].take().expect("touched slot");
                if !v.is_zero() {
                    out.push((j, v));
                }
            }
            touched.clear();
            data.push(out);
        }
        Matrix {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    /// Product followed by reduction into `ring`.
    pub fn mul_in(&self, other: &Matrix, ring: Ring) -> Result<Matrix, LinalgError> {
        self.mul(other).reduce(ring)
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.combine(other, true)
    }

    fn combine(&self, other: &Matrix, subtract: bool) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in matrix sum");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| merge_rows(a, b, subtract))
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        if s.is_zero() {
            return Matrix::zeros(self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|row| row.iter().map(|(j, v)| (*j, v * s)).collect())
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn neg(&self) -> Matrix {
        let data = self
            .data
            .iter()
            .map(|row| row.iter().map(|(j, v)| (*j, -v)).collect())
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduces every entry into the canonical representative of `ring`.
    pub fn reduce(&self, ring: Ring) -> Result<Matrix, LinalgError> {
        if ring == Ring::Rationals {
            return Ok(self.clone());
        }
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            let mut out = Vec::with_capacity(row.len());
            for (j, v) in row {
                let r = ring.normalize(v)?;
                if !r.is_zero() {
                    out.push((*j, r));
                }
            }
            data.push(out);
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Sub-matrix made of the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut position = vec![usize::MAX; self.cols];
        for (new, &old) in cols.iter().enumerate() {
            position[old] = new;
        }
        let trip = self.triplets().filter_map(|(i, j, v)| {
            let p = position[j];
            (p != usize::MAX).then(|| (i, p, v.clone()))
        });
        Matrix::from_triplets(self.rows, cols.len(), trip)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let data = rows.iter().map(|&r| self.data[r].clone()).collect();
        Matrix {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    /// Horizontal concatenation `[a | b | ...]`.
    pub fn hstack(blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.first().map_or(0, |b| b.rows);
        let mut offset = 0;
        let mut trip = Vec::new();
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            trip.extend(b.triplets().map(|(i, j, v)| (i, j + offset, v.clone())));
            offset += b.cols;
        }
        Matrix::from_triplets(rows, offset, trip)
    }

    /// Vertical concatenation.
    pub fn vstack(blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend(b.data.iter().cloned());
        }
        Matrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    /// Kronecker product, rows and columns indexed lexicographically.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let trip = self.triplets().flat_map(|(i, j, a)| {
            other.triplets().map(move |(k, l, b)| {
                (i * other.rows + k, j * other.cols + l, a * b)
            })
        });
        Matrix::from_triplets(self.rows * other.rows, self.cols * other.cols, trip.collect::<Vec<_>>())
    }

    /// Dense integer copy. Fails on a non-integral entry.
    pub fn to_dense_integers(&self) -> Result<Vec<Vec<BigInt>>, LinalgError> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, j, v) in self.triplets() {
            if !v.is_integer() {
                return Err(LinalgError::NotInRing {
                    value: v.to_string(),
                    ring: Ring::Integers,
                });
            }
            out[i][j] = v.to_integer();
        }
        Ok(out)
    }

    pub fn from_dense_integers(rows: usize, cols: usize, dense: &[Vec<BigInt>]) -> Matrix {
        let trip = dense.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(move |(j, v)| (i, j, BigRational::from_integer(v.clone())))
        });
        Matrix::from_triplets(rows, cols, trip.collect::<Vec<_>>())
    }
}

fn compress_row(mut row: Vec<(usize, Scalar)>) -> Vec<(usize, Scalar)> {
    row.sort_by_key(|(j, _)| *j);
    let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(row.len());
    for (j, v) in row {
        match out.last_mut() {
            Some((lj, lv)) if *lj == j => *lv += v,
            _ => out.push((j, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

fn merge_rows(a: &[(usize, Scalar)], b: &[(usize, Scalar)], subtract: bool) -> Vec<(usize, Scalar)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut k) = (0, 0);
    while i < a.len() || k < b.len() {
        let take_a = k >= b.len() || (i < a.len() && a[i].0 < b[k].0);
        let take_b = i >= a.len() || (k < b.len() && b[k].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = if subtract { -&b[k].1 } else { b[k].1.clone() };
            out.push((b[k].0, v));
            k += 1;
        } else {
            let v = if subtract { &a[i].1 - &b[k].1 } else { &a[i].1 + &b[k].1 };
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            k += 1;
        }
    }
    out
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        if self.rows * self.cols <= 400 {
            for i in 0..self.rows {
                let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
                writeln!(f, "  [{}]", row.join(", "))?;
            }
        } else {
            for (i, j, v) in self.triplets() {
                writeln!(f, "  ({i}, {j}) = {v}")?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = Matrix::from_rows(&[vec![1, 2], vec![0, 1]]);
        let b = Matrix::from_rows(&[vec![1, -2], vec![0, 1]]);
        assert!(a.mul(&b).is_identity());
        assert_eq!(a.transpose().get(1, 0), Scalar::from_integer(2.into()));
    }

    #[test]
    fn triplets_cancel() {
        let one = Scalar::one();
        let m = Matrix::from_triplets(2, 2, vec![(0, 0, one.clone()), (0, 0, -one)]);
        assert!(m.is_zero());
        assert_eq!(m.nnz(), 0);
    }

    #[test]
    fn prime_field_reduction() {
        let m = Matrix::from_rows(&[vec![3, -1], vec![4, 2]]);
        let r = m.reduce(Ring::PrimeField(2)).unwrap();
        assert_eq!(r, Matrix::from_rows(&[vec![1, 1], vec![0, 0]]));
    }

    #[test]
    fn kron_of_identities() {
        let k = Matrix::identity(2).kron(&Matrix::identity(3));
        assert!(k.is_identity());
    }
}
