//! Incremental column echelon over a field.
//!
//! Vectors are inserted one at a time and reduced against the stored basis.
//! Each stored vector can carry a tag recording which combination of the
//! inserted inputs produced it, which yields kernels and solutions.

use std::collections::BTreeMap;

use super::domain::Domain;

pub(crate) type SparseVec<E> = BTreeMap<usize, E>;

pub(crate) struct Echelon<'d, D: Domain> {
    d: &'d D,
    /// Stored vectors, each with leading coefficient one.
    vecs: Vec<SparseVec<D::E>>,
    tags: Vec<SparseVec<D::E>>,
    /// Leading position -> index into `vecs`.
    lead: BTreeMap<usize, usize>,
}

fn axpy<D: Domain>(d: &D, target: &mut SparseVec<D::E>, f: &D::E, src: &SparseVec<D::E>) {
    // target -= f * src
    for (k, v) in src {
        let delta = d.mul(f, v);
        let next = match target.get(k) {
            Some(x) => d.sub(x, &delta),
            None => d.neg(&delta),
        };
        if d.is_zero(&next) {
            target.remove(k);
        } else {
            target.insert(*k, next);
        }
    }
}

impl<'d, D: Domain> Echelon<'d, D> {
    pub fn new(d: &'d D) -> Self {
        Echelon {
            d,
            vecs: Vec::new(),
            tags: Vec::new(),
            lead: BTreeMap::new(),
        }
    }

    pub fn pivot_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.lead.keys().copied()
    }

    /// Reduces `v` (with its tag) until no entry sits on a pivot position.
    pub fn reduce(&self, v: &mut SparseVec<D::E>, tag: &mut SparseVec<D::E>) {
        let mut cursor = 0usize;
        loop {
            let next = v
                .range(cursor..)
                .find(|(k, _)| self.lead.contains_key(k))
                .map(|(k, x)| (*k, x.clone()));
            let Some((pos, coeff)) = next else { break };
            let idx = self.lead[&pos];
            axpy(self.d, v, &coeff, &self.vecs[idx]);
            axpy(self.d, tag, &coeff, &self.tags[idx]);
            cursor = pos + 1;
        }
    }

    /// Inserts `v`. Returns `Some(tag)` describing a vanishing combination
    /// when `v` is already in the span, `None` when it enlarged the span.
    pub fn insert(&mut self, mut v: SparseVec<D::E>, mut tag: SparseVec<D::E>) -> Option<SparseVec<D::E>> {
        self.reduce(&mut v, &mut tag);
        let Some((&pos, lead_coeff)) = v.iter().next() else {
            return Some(tag);
        };
        let inv = self.d.unit_inv(lead_coeff);
        let scale = |m: SparseVec<D::E>| -> SparseVec<D::E> {
            m.into_iter().map(|(k, x)| (k, self.d.mul(&x, &inv))).collect()
        };
        let v = scale(v);
        let tag = scale(tag);
        self.lead.insert(pos, self.vecs.len());
        self.vecs.push(v);
        self.tags.push(tag);
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::domain::RationalField;
    use num_rational::BigRational;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn dependency_is_reported() {
        let d = RationalField;
        let mut e = Echelon::new(&d);
        let a: SparseVec<_> = [(0, q(1)), (1, q(2))].into_iter().collect();
        let b: SparseVec<_> = [(0, q(2)), (1, q(4))].into_iter().collect();
        assert!(e.insert(a, [(0, q(1))].into_iter().collect()).is_none());
        let dep = e.insert(b, [(1, q(1))].into_iter().collect()).unwrap();
        // b - 2a = 0
        assert_eq!(dep.get(&0), Some(&q(-2)));
        assert_eq!(dep.get(&1), Some(&q(1)));
    }
}
