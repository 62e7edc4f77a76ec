//! Dense Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Matrix;

/// Result of [`snf`]: `u * m * v == d` with `u`, `v` unimodular.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: Matrix,
    pub u_inv: Matrix,
    pub d: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
    /// Nonzero diagonal entries `d_1 | d_2 | ...`, all positive.
    pub invariant_factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

type Dense = Vec<Vec<BigInt>>;

fn identity(n: usize) -> Dense {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Tracks `u`, `u^-1`, `v`, `v^-1` alongside the reduction.
struct Transforms {
    u: Dense,
    u_inv: Dense,
    v: Dense,
    v_inv: Dense,
}

struct Work<'a> {
    a: Dense,
    rows: usize,
    cols: usize,
    t: Option<&'a mut Transforms>,
}

impl Work<'_> {
    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        self.a.swap(i, k);
        if let Some(t) = self.t.as_deref_mut() {
            t.u.swap(i, k);
            for row in t.u_inv.iter_mut() {
                row.swap(i, k);
            }
        }
    }

    fn swap_cols(&mut self, j: usize, l: usize) {
        if j == l {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(j, l);
        }
        if let Some(t) = self.t.as_deref_mut() {
            for row in t.v.iter_mut() {
                row.swap(j, l);
            }
            t.v_inv.swap(j, l);
        }
    }

    /// row_i += q * row_k
    fn add_row(&mut self, i: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let src = self.a[k].clone();
        for (x, s) in self.a[i].iter_mut().zip(&src) {
            if !s.is_zero() {
                *x += q * s;
            }
        }
        if let Some(t) = self.t.as_deref_mut() {
            let src = t.u[k].clone();
            for (x, s) in t.u[i].iter_mut().zip(&src) {
                if !s.is_zero() {
                    *x += q * s;
                }
            }
            // u_inv <- u_inv * (I - q e_i e_k^T): col_k -= q col_i
            for row in t.u_inv.iter_mut() {
                let ci = row[i].clone();
                if !ci.is_zero() {
                    row[k] -= q * ci;
                }
            }
        }
    }

    /// col_j += q * col_l
    fn add_col(&mut self, j: usize, l: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for row in self.a.iter_mut() {
            let s = row[l].clone();
            if !s.is_zero() {
                row[j] += q * s;
            }
        }
        if let Some(t) = self.t.as_deref_mut() {
            for row in t.v.iter_mut() {
                let s = row[l].clone();
                if !s.is_zero() {
                    row[j] += q * s;
                }
            }
            // v_inv <- (I - q e_l e_j^T) v_inv: row_l -= q row_j
            let src = t.v_inv[j].clone();
            for (x, s) in t.v_inv[l].iter_mut().zip(&src) {
                if !s.is_zero() {
                    *x -= q * s;
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        if let Some(t) = self.t.as_deref_mut() {
            for x in t.u[i].iter_mut() {
                *x = -&*x;
            }
            for row in t.u_inv.iter_mut() {
                row[i] = -&row[i];
            }
        }
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let v = &self.a[i][j];
                if v.is_zero() {
                    continue;
                }
                let abs = v.abs();
                if best.as_ref().is_none_or(|(_, _, b)| abs < *b) {
                    let unit = abs.is_one();
                    best = Some((i, j, abs));
                    if unit {
                        return best.map(|(i, j, _)| (i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(&mut self) -> Vec<BigInt> {
        let mut factors = Vec::new();
        let n = self.rows.min(self.cols);
        for t in 0..n {
            let Some((pi, pj)) = self.min_entry(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].div_floor(&self.a[t][t]);
                    self.add_row(i, t, &-q);
                    if !self.a[i][t].is_zero() {
                        dirty = true;
                    }
                }
                for j in t + 1..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].div_floor(&self.a[t][t]);
                    self.add_col(j, t, &-q);
                    if !self.a[t][j].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    // move the smallest remainder in row/column t onto the pivot
                    let mut best = (t, t, self.a[t][t].abs());
                    for i in t + 1..self.rows {
                        let v = self.a[i][t].abs();
                        if !v.is_zero() && v < best.2 {
                            best = (i, t, v);
                        }
                    }
                    for j in t + 1..self.cols {
                        let v = self.a[t][j].abs();
                        if !v.is_zero() && v < best.2 {
                            best = (t, j, v);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                let pivot = self.a[t][t].clone();
                let offender = (t + 1..self.rows).find(|&i| {
                    (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(&pivot))
                });
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            factors.push(self.a[t][t].clone());
        }
        factors
    }
}

fn dense_of(m: &Matrix) -> Dense {
    m.to_dense_integers()
        .expect("Smith normal form requires an integer matrix")
}

/// Smith normal form with unimodular transforms.
///
/// Pivots are chosen with minimal absolute value. Panics on a non-integral
/// entry; callers validate the ring first.
pub fn snf(m: &Matrix) -> SmithForm {
    let (rows, cols) = m.shape();
    let mut t = Transforms {
        u: identity(rows),
        u_inv: identity(rows),
        v: identity(cols),
        v_inv: identity(cols),
    };
    let mut w = Work {
        a: dense_of(m),
        rows,
        cols,
        t: Some(&mut t),
    };
    let invariant_factors = w.run();
    let d = Matrix::from_dense_integers(rows, cols, &w.a);
    SmithForm {
        u: Matrix::from_dense_integers(rows, rows, &t.u),
        u_inv: Matrix::from_dense_integers(rows, rows, &t.u_inv),
        d,
        v: Matrix::from_dense_integers(cols, cols, &t.v),
        v_inv: Matrix::from_dense_integers(cols, cols, &t.v_inv),
        invariant_factors,
    }
}

/// Nonzero invariant factors of a dense integer block, without transforms.
pub(crate) fn dense_invariant_factors(a: Dense, cols: usize) -> Vec<BigInt> {
    let rows = a.len();
    let mut w = Work {
        a,
        rows,
        cols,
        t: None,
    };
    w.run()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &Matrix) -> SmithForm {
        let s = snf(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert!(s.u.mul(&s.u_inv).is_identity());
        assert!(s.v.mul(&s.v_inv).is_identity());
        s
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&Matrix::identity(2));
        assert!(s.d.is_identity());
        assert!(s.u.is_identity() && s.v.is_identity());
    }

    #[test]
    fn two_by_two_example() {
        // gcd of entries is 2 and |det| = 8, so the factors are 2 and 4
        let s = check(&Matrix::from_rows(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(s.invariant_factors, vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn zero_one_by_one() {
        let s = check(&Matrix::zeros(1, 1));
        assert!(s.d.is_zero());
        assert!(s.invariant_factors.is_empty());
    }

    #[test]
    fn empty_matrices() {
        let s = check(&Matrix::zeros(0, 3));
        assert_eq!(s.d.shape(), (0, 3));
        let s = check(&Matrix::zeros(2, 0));
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn divisibility_is_enforced() {
        // diag(2, 3) has factors 1 and 6
        let s = check(&Matrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.invariant_factors, vec![BigInt::from(1), BigInt::from(6)]);
    }
}
