//! Sparse elimination on unit pivots.
//!
//! Pivots are chosen by a Markowitz cost so that the {-1, 0, 1}-dominated
//! matrices coming out of simplicial data stay sparse. Over a field every
//! nonzero entry is a unit and the routine computes the rank outright; over
//! the integers it leaves a residual block with no unit entries, which the
//! dense Smith normal form then finishes.

use std::collections::BTreeSet;

use super::domain::Domain;

pub(crate) struct Eliminated<E> {
    /// Number of unit pivots consumed.
    pub unit_pivots: usize,
    /// Surviving nonzero rows; none of their entries is a unit.
    pub residual: Vec<Vec<(usize, E)>>,
}

fn axpy<D: Domain>(d: &D, target: &[(usize, D::E)], f: &D::E, src: &[(usize, D::E)]) -> Vec<(usize, D::E)> {
    // target - f * src
    let mut out = Vec::with_capacity(target.len() + src.len());
    let (mut i, mut k) = (0, 0);
    while i < target.len() || k < src.len() {
        if k >= src.len() || (i < target.len() && target[i].0 < src[k].0) {
            out.push(target[i].clone());
            i += 1;
        } else if i >= target.len() || src[k].0 < target[i].0 {
            let v = d.neg(&d.mul(f, &src[k].1));
            if !d.is_zero(&v) {
                out.push((src[k].0, v));
            }
            k += 1;
        } else {
            let v = d.sub(&target[i].1, &d.mul(f, &src[k].1));
            if !d.is_zero(&v) {
                out.push((target[i].0, v));
            }
            i += 1;
            k += 1;
        }
    }
    out
}

pub(crate) fn unit_pivot_elimination<D: Domain>(
    d: &D,
    mut rows: Vec<Vec<(usize, D::E)>>,
    ncols: usize,
) -> Eliminated<D::E> {
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    let mut active: BTreeSet<usize> = BTreeSet::new();
    for (r, row) in rows.iter().enumerate() {
        if row.is_empty() {
            continue;
        }
        active.insert(r);
        for (c, _) in row {
            col_rows[*c].insert(r);
        }
    }

    let mut unit_pivots = 0;
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        'search: for &r in &active {
            let len = rows[r].len();
            for (c, v) in &rows[r] {
                if !d.is_unit(v) {
                    continue;
                }
                let cost = (len - 1) * (col_rows[*c].len() - 1);
                if best.is_none_or(|(b, _, _)| cost < b) {
                    best = Some((cost, r, *c));
                    if cost == 0 {
                        break 'search;
                    }
                }
            }
        }
        let Some((_, pr, pc)) = best else { break };

        let pivot_row = std::mem::take(&mut rows[pr]);
        let pv = pivot_row
            .iter()
            .find(|(c, _)| *c == pc)
            .map(|(_, v)| v.clone())
            .expect("pivot entry");
        let inv = d.unit_inv(&pv);
        for (c, _) in &pivot_row {
            col_rows[*c].remove(&pr);
        }
        active.remove(&pr);

        let targets: Vec<usize> = col_rows[pc].iter().copied().collect();
        for r in targets {
            let a = rows[r]
                .iter()
                .find(|(c, _)| *c == pc)
                .map(|(_, v)| v.clone())
                .expect("column entry");
            let f = d.mul(&a, &inv);
            let updated = axpy(d, &rows[r], &f, &pivot_row);
            for (c, _) in &rows[r] {
                col_rows[*c].remove(&r);
            }
            for (c, _) in &updated {
                col_rows[*c].insert(r);
            }
            if updated.is_empty() {
                active.remove(&r);
            }
            rows[r] = updated;
        }
        unit_pivots += 1;
    }

    let residual = active.into_iter().map(|r| std::mem::take(&mut rows[r])).collect();
    Eliminated {
        unit_pivots,
        residual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::domain::{sparse_rows, IntegerDomain, PrimeFieldDomain};
    use crate::linalg::Matrix;

    #[test]
    fn integer_residual_keeps_non_units() {
        let m = Matrix::from_rows(&[vec![2, 0], vec![0, 1]]);
        let d = IntegerDomain;
        let e = unit_pivot_elimination(&d, sparse_rows(&d, &m), 2);
        assert_eq!(e.unit_pivots, 1);
        assert_eq!(e.residual.len(), 1);
    }

    #[test]
    fn field_rank_completes() {
        let m = Matrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        let f2 = PrimeFieldDomain { p: 2 };
        let e = unit_pivot_elimination(&f2, sparse_rows(&f2, &m.reduce(crate::linalg::Ring::PrimeField(2)).unwrap()), 3);
        assert_eq!(e.unit_pivots, 2);
        assert!(e.residual.is_empty());
    }
}
