use std::collections::HashMap;

use num_traits::One;

use crate::linalg::{Matrix, Ring, Scalar};
use crate::reflexive::DeltaRModule;
use crate::validation::{Collector, Violation};

use super::sparse::{collect, columns_of, tensor, SparseVector};
use super::{AlgebraError, InvolutiveAlgebra, InvolutiveBimodule};

/// Mixed-radix basis of `M (x) A^{(x) n}`: digit 0 ranges over `M`, the
/// rest over `A`.
struct TupleBasis {
    m: usize,
    a: usize,
}

impl TupleBasis {
    fn rank(&self, n: usize) -> usize {
        self.m * self.a.pow(n as u32)
    }

    fn decode(&self, mut idx: usize, n: usize) -> Vec<usize> {
        let mut digits = vec![0; n + 1];
        for d in (1..=n).rev() {
            digits[d] = idx % self.a;
            idx /= self.a;
        }
        digits[0] = idx;
        digits
    }

    fn encode(&self, digits: &[usize]) -> usize {
        digits[1..].iter().fold(digits[0], |acc, d| acc * self.a + d)
    }

    fn radices(&self, n: usize) -> Vec<usize> {
        std::iter::once(self.m).chain(std::iter::repeat_n(self.a, n)).collect()
    }
}

fn matrix_from_images(ring: Ring, rows: usize, cols: usize, image: impl Fn(usize) -> SparseVector) -> Matrix {
    let columns: Vec<SparseVector> = (0..cols).map(|c| collect(ring, image(c))).collect();
    Matrix::from_columns(rows, &columns)
}

/// The Loday functor `L(A, M)` with involutions scaled by `sign`: level `n`
/// is `M (x) A^{(x) n}` with Hochschild faces, unit-inserting degeneracies
/// and `R_n(m (x) a_1 ... a_n) = sign * (bar m (x) bar a_n ... bar a_1)`.
pub fn loday_module(
    a: &InvolutiveAlgebra,
    m: &InvolutiveBimodule,
    sign: i8,
    max_level: usize,
) -> Result<DeltaRModule, AlgebraError> {
    let mut report = a.validate();
    report.extend(m.validate(a));
    if !report.is_empty() {
        return Err(AlgebraError::Invalid(report));
    }
    let ring = a.ring();
    let basis = TupleBasis { m: m.rank(), a: a.rank() };
    let module = m.module();
    let sign = if sign < 0 { -Scalar::one() } else { Scalar::one() };

    let mut faces = vec![Vec::new()];
    for n in 1..=max_level {
        let mut level = Vec::with_capacity(n + 1);
        for i in 0..=n {
            level.push(matrix_from_images(ring, basis.rank(n - 1), basis.rank(n), |c| {
                let d = basis.decode(c, n);
                let mut out = Vec::new();
                if i == 0 {
                    for (x, v) in module.right_action(d[0], d[1]) {
                        let mut t = vec![*x];
                        t.extend_from_slice(&d[2..]);
                        out.push((basis.encode(&t), v.clone()));
                    }
                } else if i < n {
                    for (k, v) in a.product(d[i], d[i + 1]) {
                        let mut t = d[..i].to_vec();
                        t.push(*k);
                        t.extend_from_slice(&d[i + 2..]);
                        out.push((basis.encode(&t), v.clone()));
                    }
                } else {
                    for (x, v) in module.left_action(d[n], d[0]) {
                        let mut t = vec![*x];
                        t.extend_from_slice(&d[1..n]);
                        out.push((basis.encode(&t), v.clone()));
                    }
                }
                out
            }));
        }
        faces.push(level);
    }

    let mut degeneracies = Vec::with_capacity(max_level);
    for n in 0..max_level {
        let level = (0..=n)
            .map(|j| {
                matrix_from_images(ring, basis.rank(n + 1), basis.rank(n), |c| {
                    let d = basis.decode(c, n);
                    a.unit()
                        .iter()
                        .map(|(u, v)| {
                            let mut t = d[..=j].to_vec();
                            t.push(*u);
                            t.extend_from_slice(&d[j + 1..]);
                            (basis.encode(&t), v.clone())
                        })
                        .collect()
                })
            })
            .collect();
        degeneracies.push(level);
    }

    let involutions = (0..=max_level)
        .map(|n| {
            let radices = basis.radices(n);
            matrix_from_images(ring, basis.rank(n), basis.rank(n), |c| {
                let d = basis.decode(c, n);
                let mut factors: Vec<&[(usize, Scalar)]> = vec![m.bar(d[0])];
                factors.extend((1..=n).rev().map(|k| a.bar(d[k]).as_slice()));
                tensor(&factors, &radices)
                    .into_iter()
                    .map(|(i, v)| (i, v * &sign))
                    .collect()
            })
        })
        .collect();

    let ranks = (0..=max_level).map(|n| basis.rank(n)).collect();
    DeltaRModule::new(ring, ranks, faces, degeneracies, involutions).map_err(|e| AlgebraError::ShapeMismatch(e.to_string()))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Rank of level `n` of the weight-`w` piece of the tensor algebra on a
/// module of rank `v`.
pub fn tensor_weight_rank(v: usize, w: usize, n: usize) -> usize {
    binomial(w + n, n) * v.pow(w as u32)
}

type Words = Vec<Vec<usize>>;

/// All sequences of `parts` words over `v` letters of total length `w`,
/// ordered by composition and then lexicographically.
fn word_sequences(v: usize, w: usize, parts: usize) -> Vec<Words> {
    fn compositions(w: usize, parts: usize) -> Vec<Vec<usize>> {
        if parts == 1 {
            return vec![vec![w]];
        }
        let mut out = Vec::new();
        for first in 0..=w {
            for mut rest in compositions(w - first, parts - 1) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut out = Vec::new();
    for comp in compositions(w, parts) {
        let total = v.pow(w as u32);
        for code in 0..total {
            let mut letters = Vec::with_capacity(w);
            let mut c = code;
            for _ in 0..w {
                letters.push(c % v);
                c /= v;
            }
            letters.reverse();
            let mut words = Vec::with_capacity(parts);
            let mut pos = 0;
            for &len in &comp {
                words.push(letters[pos..pos + len].to_vec());
                pos += len;
            }
            out.push(words);
        }
    }
    out
}

/// Weight-`w` piece of the Loday functor of the tensor algebra `T(V)` with
/// coefficients in itself. The involution reverses each word and applies
/// `involution` to every letter.
pub fn tensor_weight_module(
    v_rank: usize,
    involution: &Matrix,
    w: usize,
    max_level: usize,
    ring: Ring,
) -> Result<DeltaRModule, AlgebraError> {
    if involution.shape() != (v_rank, v_rank) {
        return Err(AlgebraError::ShapeMismatch(format!(
            "involution on V is {:?}, expected {v_rank}x{v_rank}",
            involution.shape()
        )));
    }
    let involution = involution.reduce(ring)?;
    if !involution.mul_in(&involution, ring)?.is_identity() {
        return Err(AlgebraError::Invalid(vec![Violation::new(
            "involution squares to identity",
            "involution on V",
        )]));
    }
    let letter_bar = columns_of(&involution);
    let levels: Vec<Vec<Words>> = (0..=max_level).map(|n| word_sequences(v_rank, w, n + 1)).collect();
    let index: Vec<HashMap<Words, usize>> = levels
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
        .collect();

    let from_fn = |n_src: usize, n_dst: usize, f: &dyn Fn(&Words) -> Words| -> Matrix {
        let trip = levels[n_src]
            .iter()
            .enumerate()
            .map(|(c, s)| (index[n_dst][&f(s)], c, Scalar::one()));
        Matrix::from_triplets(levels[n_dst].len(), levels[n_src].len(), trip)
    };

    let mut faces = vec![Vec::new()];
    for n in 1..=max_level {
        let level = (0..=n)
            .map(|i| {
                from_fn(n, n - 1, &|s: &Words| {
                    let mut t = s.clone();
                    if i < n {
                        let next = t.remove(i + 1);
                        t[i].extend(next);
                    } else {
                        let last = t.pop().expect("n >= 1");
                        let mut front = last;
                        front.extend(t[0].iter().copied());
                        t[0] = front;
                    }
                    t
                })
            })
            .collect();
        faces.push(level);
    }
    let degeneracies = (0..max_level)
        .map(|n| {
            (0..=n)
                .map(|j| {
                    from_fn(n, n + 1, &|s: &Words| {
                        let mut t = s.clone();
                        t.insert(j + 1, Vec::new());
                        t
                    })
                })
                .collect()
        })
        .collect();

    // bar of a word: reverse, then the letter involution on each letter
    let bar_word = |word: &[usize]| -> Vec<(Vec<usize>, Scalar)> {
        let mut acc: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), Scalar::one())];
        for &x in word.iter().rev() {
            let mut next = Vec::new();
            for (prefix, c) in &acc {
                for (y, v) in &letter_bar[x] {
                    let mut p = prefix.clone();
                    p.push(*y);
                    next.push((p, c * v));
                }
            }
            acc = next;
        }
        acc
    };
    let involutions = (0..=max_level)
        .map(|n| {
            let mut trip = Vec::new();
            for (c, s) in levels[n].iter().enumerate() {
                let order: Vec<usize> = std::iter::once(0).chain((1..=n).rev()).collect();
                let mut acc: Vec<(Words, Scalar)> = vec![(Vec::new(), Scalar::one())];
                for k in order {
                    let options = bar_word(&s[k]);
                    let mut next = Vec::new();
                    for (prefix, coeff) in &acc {
                        for (wd, v) in &options {
                            let mut p = prefix.clone();
                            p.push(wd.clone());
                            next.push((p, coeff * v));
                        }
                    }
                    acc = next;
                }
                for (t, v) in acc {
                    trip.push((index[n][&t], c, v));
                }
            }
            Matrix::from_triplets(levels[n].len(), levels[n].len(), trip)
        })
        .collect();
    let ranks = levels.iter().map(Vec::len).collect();
    DeltaRModule::new(ring, ranks, faces, degeneracies, involutions).map_err(|e| AlgebraError::ShapeMismatch(e.to_string()))
}

/// The trace `Tr_n: M_m(A)^{(x)(n+1)} -> A^{(x)(n+1)}` for `n <= max_level`,
/// with the matrix algebra basis of [`super::matrix_algebra`].
pub fn trace_map(a: &InvolutiveAlgebra, m: usize, max_level: usize) -> Vec<Matrix> {
    let r = a.rank();
    let src = TupleBasis { m: m * m * r, a: m * m * r };
    let dst = TupleBasis { m: r, a: r };
    (0..=max_level)
        .map(|n| {
            let mut trip = Vec::new();
            for c in 0..src.rank(n) {
                let d = src.decode(c, n);
                let entries: Vec<(usize, usize, usize)> = d.iter().map(|x| (x / r / m, x / r % m, x % r)).collect();
                let cyclic = (0..=n).all(|t| entries[t].1 == entries[(t + 1) % (n + 1)].0);
                if cyclic {
                    let ks: Vec<usize> = entries.iter().map(|e| e.2).collect();
                    trip.push((dst.encode(&ks), c, Scalar::one()));
                }
            }
            Matrix::from_triplets(dst.rank(n), src.rank(n), trip)
        })
        .collect()
}

/// Checks that `maps[n]` intertwines every generating operator of `source`
/// and `target`.
pub fn check_module_map(source: &DeltaRModule, target: &DeltaRModule, maps: &[Matrix]) -> Vec<Violation> {
    let ring = source.ring();
    let mut c = Collector::new();
    let q = source.max_level().min(target.max_level()).min(maps.len().saturating_sub(1));
    let commutes = |f_dst: &Matrix, f_src: &Matrix, before: &Matrix, after: &Matrix| -> bool {
        // after * f_src == f_dst * before
        after.mul_in(f_src, ring).expect("shapes") == f_dst.mul_in(before, ring).expect("shapes")
    };
    for n in 0..=q {
        c.check(
            commutes(&maps[n], &maps[n], source.involution(n), target.involution(n)),
            "map commutes with involutions",
            || format!("level {n}"),
        );
        if n > 0 {
            for i in 0..=n {
                c.check(
                    commutes(&maps[n - 1], &maps[n], source.face(n, i), target.face(n, i)),
                    "map commutes with faces",
                    || format!("d{i} on level {n}"),
                );
            }
        }
        if n < q {
            for j in 0..=n {
                c.check(
                    commutes(&maps[n + 1], &maps[n], source.degeneracy(n, j), target.degeneracy(n, j)),
                    "map commutes with degeneracies",
                    || format!("s{j} on level {n}"),
                );
            }
        }
    }
    c.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{group_algebra, ground_algebra, matrix_algebra};
    use crate::groups::FiniteGroup;

    #[test]
    fn ground_ring_levels_are_trivial() {
        let k = ground_algebra(Ring::Integers);
        let f = loday_module(&k, &k.regular_bimodule(), 1, 4).unwrap();
        assert!(f.validate().is_empty());
        for n in 0..=4 {
            assert_eq!(f.rank(n), 1);
            assert!(f.involution(n).is_identity());
        }
        assert!(f.face(3, 2).is_identity());
    }

    #[test]
    fn group_algebra_level_one() {
        let g = FiniteGroup::cyclic(2);
        let a = group_algebra(&g, Ring::Integers);
        let f = loday_module(&a, &a.regular_bimodule(), 1, 3).unwrap();
        assert!(f.validate().is_empty());
        assert_eq!(f.rank(1), 4);
        // d0(g (x) h) = gh
        let d0 = f.face(1, 0);
        for gi in 0..2 {
            for hi in 0..2 {
                assert_eq!(d0.get(g.mul(gi, hi), gi * 2 + hi), Scalar::one());
            }
        }
        assert!(f.involution(1).is_identity());
        let minus = loday_module(&a, &a.regular_bimodule(), -1, 3).unwrap();
        assert_eq!(minus.involution(2).as_ref(), &f.involution(2).neg());
        assert!(minus.validate().is_empty());
    }

    #[test]
    fn c3_level_one_involution() {
        let a = group_algebra(&FiniteGroup::cyclic(3), Ring::Integers);
        let f = loday_module(&a, &a.regular_bimodule(), 1, 2).unwrap();
        // R1(z (x) z) = z^2 (x) z^2: index 1*3+1 -> 2*3+2
        assert_eq!(f.involution(1).get(8, 4), Scalar::one());
        assert!(f.validate().is_empty());
    }

    #[test]
    fn tensor_weight_examples() {
        let id = Matrix::identity(1);
        let w0 = tensor_weight_module(1, &id, 0, 3, Ring::Integers).unwrap();
        assert!(w0.ranks().iter().all(|&r| r == 1));
        let w1 = tensor_weight_module(1, &id, 1, 3, Ring::Integers).unwrap();
        assert_eq!(w1.rank(1), 2);
        // R_1(m (x) a) = bar m (x) bar a fixes both basis elements
        assert!(w1.involution(1).is_identity());
        // R_2 swaps 1 (x) x (x) 1 and 1 (x) 1 (x) x; basis order is (1,1,x), (1,x,1), (x,1,1)
        assert_eq!(
            w1.involution(2).as_ref(),
            &Matrix::from_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]])
        );
        let w2 = tensor_weight_module(1, &id, 2, 3, Ring::Integers).unwrap();
        assert_eq!(w2.rank(1), 3);
        let swap = Matrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        for w in 0..=3 {
            let f = tensor_weight_module(2, &swap, w, 3, Ring::Integers).unwrap();
            assert!(f.validate().is_empty(), "weight {w}");
            for n in 0..=3 {
                assert_eq!(f.rank(n), tensor_weight_rank(2, w, n));
            }
        }
    }

    #[test]
    fn trace_examples() {
        let z = ground_algebra(Ring::Integers);
        let t = trace_map(&z, 2, 1);
        // X -> x11 + x22
        assert_eq!(t[0], Matrix::from_rows(&[vec![1, 0, 0, 1]]));
        assert_eq!(t[1].shape(), (1, 16));
        assert_eq!(t[1].nnz(), 4);
        // x^(0)_{12} x^(1)_{21}: e12 (x) e21 = index 1 * 4 + 2
        assert_eq!(t[1].get(0, 6), Scalar::one());
        let ident = trace_map(&z, 1, 2);
        assert!(ident.iter().all(Matrix::is_identity));
    }

    #[test]
    fn trace_is_a_module_map() {
        let a = crate::algebra::gaussian_integers(Ring::Integers);
        let big = matrix_algebra(&a, 2).unwrap();
        let src = loday_module(&big, &big.regular_bimodule(), 1, 2).unwrap();
        let dst = loday_module(&a, &a.regular_bimodule(), 1, 2).unwrap();
        assert!(check_module_map(&src, &dst, &trace_map(&a, 2, 2)).is_empty());
    }
}
