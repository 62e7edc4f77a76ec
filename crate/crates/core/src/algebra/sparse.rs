//! Sparse coefficient vectors indexed by basis position.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::linalg::{LinalgError, Matrix, Ring, Scalar};

pub type SparseVector = Vec<(usize, Scalar)>;

/// Sums repeated indices, reduces into `ring` and drops zeros.
pub(crate) fn collect(ring: Ring, terms: impl IntoIterator<Item = (usize, Scalar)>) -> SparseVector {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (i, v) in terms {
        *acc.entry(i).or_insert_with(Scalar::zero) += v;
    }
    acc.into_iter()
        .filter_map(|(i, v)| {
            let v = ring.normalize(&v).expect("entries stay in the ring");
            (!v.is_zero()).then_some((i, v))
        })
        .collect()
}

pub(crate) fn from_dense(ring: Ring, v: &[Scalar]) -> Result<SparseVector, LinalgError> {
    let mut out = Vec::new();
    for (i, x) in v.iter().enumerate() {
        let x = ring.normalize(x)?;
        if !x.is_zero() {
            out.push((i, x));
        }
    }
    Ok(out)
}

pub(crate) fn to_dense(v: &[(usize, Scalar)], len: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub(crate) fn unit_vector(i: usize) -> SparseVector {
    vec![(i, num_traits::One::one())]
}

pub(crate) fn scale<'a>(v: &'a [(usize, Scalar)], s: &Scalar) -> impl Iterator<Item = (usize, Scalar)> + 'a {
    let s = s.clone();
    v.iter().map(move |(i, x)| (*i, x * &s))
}

pub(crate) fn apply_columns(ring: Ring, cols: &[SparseVector], v: &[(usize, Scalar)]) -> SparseVector {
    collect(ring, v.iter().flat_map(|(j, x)| scale(&cols[*j], x).collect::<Vec<_>>()))
}

pub(crate) fn columns_of(m: &Matrix) -> Vec<SparseVector> {
    m.columns()
}

/// Sparse tensor product of vectors over mixed radices; the first factor is
/// the most significant digit.
pub(crate) fn tensor(factors: &[&[(usize, Scalar)]], radices: &[usize]) -> SparseVector {
    let mut acc: SparseVector = vec![(0, num_traits::One::one())];
    for (f, &radix) in factors.iter().zip(radices) {
        let mut next = Vec::with_capacity(acc.len() * f.len());
        for (i, x) in &acc {
            for (j, y) in f.iter() {
                next.push((i * radix + j, x * y));
            }
        }
        acc = next;
    }
    acc
}
