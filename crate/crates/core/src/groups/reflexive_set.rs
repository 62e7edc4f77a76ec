use num_traits::One;

use crate::linalg::{Matrix, Ring, Scalar};
use crate::reflexive::{DeltaRModule, Operator};
use crate::validation::{Collector, Violation};

use super::{FiniteGroup, GroupError};

/// Reflexive set truncated at `max_level`, with every operator stored as an
/// index function on the simplices of its source level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteReflexiveSet {
    labels: Vec<Vec<String>>,
    /// `faces[n][i][x]` for `1 <= n`; `faces[0]` is empty.
    faces: Vec<Vec<Vec<usize>>>,
    /// `degeneracies[n][j][x]` for `n < max_level`.
    degeneracies: Vec<Vec<Vec<usize>>>,
    involutions: Vec<Vec<usize>>,
}

impl FiniteReflexiveSet {
    /// Checks that every map has the right arity and lands in its target
    /// level. The identities are checked by [`FiniteReflexiveSet::validate`].
    pub fn new(
        labels: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<usize>>>,
        degeneracies: Vec<Vec<Vec<usize>>>,
        involutions: Vec<Vec<usize>>,
    ) -> Result<Self, GroupError> {
        let bad = |msg: String| Err(GroupError::MalformedSet(msg));
        let Some(q) = labels.len().checked_sub(1) else {
            return bad("a reflexive set needs level 0".into());
        };
        if faces.len() != q + 1 || degeneracies.len() != q || involutions.len() != q + 1 {
            return bad(format!("{} levels need {} face lists, {q} degeneracy lists", q + 1, q + 1));
        }
        let size = |n: usize| labels[n].len();
        let fits = |map: &[usize], from: usize, to: usize| map.len() == size(from) && map.iter().all(|&x| x < size(to));
        for n in 0..=q {
            let expected = if n == 0 { 0 } else { n + 1 };
            if faces[n].len() != expected {
                return bad(format!("level {n} needs {expected} faces"));
            }
            if let Some(i) = (0..expected).find(|&i| !fits(&faces[n][i], n, n - 1)) {
                return bad(format!("face {i} on level {n} is not a map to level {}", n - 1));
            }
            if !fits(&involutions[n], n, n) {
                return bad(format!("involution on level {n} is not a self-map"));
            }
        }
        for n in 0..q {
            if degeneracies[n].len() != n + 1 {
                return bad(format!("level {n} needs {} degeneracies", n + 1));
            }
            if let Some(j) = (0..=n).find(|&j| !fits(&degeneracies[n][j], n, n + 1)) {
                return bad(format!("degeneracy {j} on level {n} is not a map to level {}", n + 1));
            }
        }
        Ok(FiniteReflexiveSet {
            labels,
            faces,
            degeneracies,
            involutions,
        })
    }

    /// One simplex per level, every operator the identity.
    pub fn point(max_level: usize) -> Self {
        FiniteReflexiveSet {
            labels: vec![vec!["*".into()]; max_level + 1],
            faces: (0..=max_level).map(|n| if n == 0 { Vec::new() } else { vec![vec![0]; n + 1] }).collect(),
            degeneracies: (0..max_level).map(|n| vec![vec![0]; n + 1]).collect(),
            involutions: vec![vec![0]; max_level + 1],
        }
    }

    pub fn max_level(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn size(&self, n: usize) -> usize {
        self.labels[n].len()
    }

    pub fn labels(&self, n: usize) -> &[String] {
        &self.labels[n]
    }

    pub fn face(&self, n: usize, i: usize) -> &[usize] {
        &self.faces[n][i]
    }

    pub fn degeneracy(&self, n: usize, j: usize) -> &[usize] {
        &self.degeneracies[n][j]
    }

    pub fn involution(&self, n: usize) -> &[usize] {
        &self.involutions[n]
    }

    /// Simplicial identities, `r_n^2 = id`, `d_i r_n = r_{n-1} d_{n-i}` and
    /// `s_j r_n = r_{n+1} s_{n-j}`, checked simplex by simplex.
    pub fn validate(&self) -> Vec<Violation> {
        let q = self.max_level();
        let mut c = Collector::new();
        let d = |n: usize, i: usize, x: usize| self.faces[n][i][x];
        let s = |n: usize, j: usize, x: usize| self.degeneracies[n][j][x];
        let r = |n: usize, x: usize| self.involutions[n][x];
        for n in 0..=q {
            for x in 0..self.size(n) {
                c.check(r(n, r(n, x)) == x, "involution", || format!("r{n} r{n} moves simplex {x}"));
                if n >= 1 {
                    for i in 0..=n {
                        c.check(d(n, i, r(n, x)) == r(n - 1, d(n, n - i, x)), "face-involution", || {
                            format!("d{i} r{n} != r{} d{} at simplex {x}", n - 1, n - i)
                        });
                    }
                }
                if n >= 2 {
                    for j in 1..=n {
                        for i in 0..j {
                            c.check(d(n - 1, i, d(n, j, x)) == d(n - 1, j - 1, d(n, i, x)), "face-face", || {
                                format!("d{i} d{j} != d{} d{i} on level {n}, simplex {x}", j - 1)
                            });
                        }
                    }
                }
                if n < q {
                    for j in 0..=n {
                        let sx = s(n, j, x);
                        c.check(r(n + 1, sx) == s(n, n - j, r(n, x)), "degeneracy-involution", || {
                            format!("r{} s{j} != s{} r{n} at simplex {x}", n + 1, n - j)
                        });
                        for i in 0..=n + 1 {
                            let lhs = d(n + 1, i, sx);
                            let rhs = if i < j {
                                if n == 0 {
                                    continue;
                                }
                                s(n - 1, j - 1, d(n, i, x))
                            } else if i == j || i == j + 1 {
                                x
                            } else {
                                if n == 0 {
                                    continue;
                                }
                                s(n - 1, j, d(n, i - 1, x))
                            };
                            c.check(lhs == rhs, "face-degeneracy", || {
                                format!("d{i} s{j} on level {n}, simplex {x}")
                            });
                        }
                    }
                }
                if n + 1 < q {
                    for j in 0..=n {
                        for i in 0..=j {
                            c.check(
                                s(n + 1, i, s(n, j, x)) == s(n + 1, j + 1, s(n, i, x)),
                                "degeneracy-degeneracy",
                                || format!("s{i} s{j} != s{} s{i} on level {n}, simplex {x}", j + 1),
                            );
                        }
                    }
                }
            }
        }
        c.finish()
    }

    /// Copy with one value of one operator redirected to `target`; used to
    /// probe the validator.
    pub fn perturbed(&self, op: Operator, x: usize, target: usize) -> Self {
        let mut out = self.clone();
        let map = match op {
            Operator::Face(n, i) => &mut out.faces[n][i],
            Operator::Degeneracy(n, j) => &mut out.degeneracies[n][j],
            Operator::Involution(n) => &mut out.involutions[n],
        };
        map[x] = target;
        out
    }

    pub fn validated(self) -> Result<Self, GroupError> {
        let v = self.validate();
        if v.is_empty() {
            Ok(self)
        } else {
            Err(GroupError::Invalid(v))
        }
    }
}

/// Checks that the levelwise index maps `maps[n]: source_n -> target_n`
/// commute with every face, degeneracy and involution.
pub fn check_set_map(source: &FiniteReflexiveSet, target: &FiniteReflexiveSet, maps: &[Vec<usize>]) -> Vec<Violation> {
    let mut c = Collector::new();
    let q = source.max_level().min(target.max_level()).min(maps.len().saturating_sub(1));
    for n in 0..=q {
        if maps[n].len() != source.size(n) || maps[n].iter().any(|&y| y >= target.size(n)) {
            c.push("shape", || format!("map on level {n} does not fit"));
            return c.finish();
        }
    }
    for n in 0..=q {
        for x in 0..source.size(n) {
            let fx = maps[n][x];
            c.check(
                maps[n][source.involution(n)[x]] == target.involution(n)[fx],
                "commutes with involution",
                || format!("level {n}, simplex {x}"),
            );
            if n >= 1 {
                for i in 0..=n {
                    c.check(
                        maps[n - 1][source.face(n, i)[x]] == target.face(n, i)[fx],
                        "commutes with faces",
                        || format!("d{i} on level {n}, simplex {x}"),
                    );
                }
            }
            if n < q {
                for j in 0..=n {
                    c.check(
                        maps[n + 1][source.degeneracy(n, j)[x]] == target.degeneracy(n, j)[fx],
                        "commutes with degeneracies",
                        || format!("s{j} on level {n}, simplex {x}"),
                    );
                }
            }
        }
    }
    c.finish()
}

/// Tuples of group elements of a fixed length, indexed big-endian in base
/// `|G|`.
pub(crate) struct Tuples {
    pub order: usize,
}

impl Tuples {
    pub fn count(&self, len: usize) -> usize {
        self.order.pow(len as u32)
    }

    pub fn decode(&self, mut idx: usize, len: usize) -> Vec<usize> {
        let mut out = vec![0; len];
        for slot in out.iter_mut().rev() {
            *slot = idx % self.order;
            idx /= self.order;
        }
        out
    }

    pub fn encode(&self, digits: &[usize]) -> usize {
        digits.iter().fold(0, |acc, &d| acc * self.order + d)
    }
}

fn tuple_label(g: &FiniteGroup, t: &[usize]) -> String {
    let parts: Vec<&str> = t.iter().map(|&x| g.labels()[x].as_str()).collect();
    format!("({})", parts.join(","))
}

/// Builds a set whose level `n` is all tuples of length `len(n)`, with the
/// operators given as tuple rewrites.
fn tuple_set(
    g: &FiniteGroup,
    max_level: usize,
    len: impl Fn(usize) -> usize,
    face: impl Fn(usize, usize, &[usize]) -> Vec<usize>,
    degeneracy: impl Fn(usize, &[usize]) -> Vec<usize>,
    involution: impl Fn(&[usize]) -> Vec<usize>,
) -> FiniteReflexiveSet {
    let t = Tuples { order: g.order() };
    let tuples = |n: usize| -> Vec<Vec<usize>> { (0..t.count(len(n))).map(|x| t.decode(x, len(n))).collect() };
    let labels = (0..=max_level).map(|n| tuples(n).iter().map(|x| tuple_label(g, x)).collect()).collect();
    let faces = (0..=max_level)
        .map(|n| {
            if n == 0 {
                return Vec::new();
            }
            (0..=n).map(|i| tuples(n).iter().map(|x| t.encode(&face(n, i, x))).collect()).collect()
        })
        .collect();
    let degeneracies = (0..max_level)
        .map(|n| (0..=n).map(|j| tuples(n).iter().map(|x| t.encode(&degeneracy(j, x))).collect()).collect())
        .collect();
    let involutions = (0..=max_level).map(|n| tuples(n).iter().map(|x| t.encode(&involution(x))).collect()).collect();
    FiniteReflexiveSet {
        labels,
        faces,
        degeneracies,
        involutions,
    }
}

/// `Gamma_n G = G^{n+1}`: `d_i` multiplies `g_i g_{i+1}` for `i < n`, `d_n`
/// moves `g_n g_0` to the front, `r_n(g_0, ..., g_n) = (g_0^-1, g_n^-1, ...,
/// g_1^-1)`.
pub fn gamma_reflexive_set(g: &FiniteGroup, max_level: usize) -> FiniteReflexiveSet {
    tuple_set(
        g,
        max_level,
        |n| n + 1,
        |n, i, x| {
            if i < n {
                let mut y = x.to_vec();
                y[i] = g.mul(x[i], x[i + 1]);
                y.remove(i + 1);
                y
            } else {
                let mut y = x[..n].to_vec();
                y[0] = g.mul(x[n], x[0]);
                y
            }
        },
        |j, x| {
            let mut y = x.to_vec();
            y.insert(j + 1, g.identity());
            y
        },
        |x| {
            let mut y = vec![g.inv(x[0])];
            y.extend(x[1..].iter().rev().map(|&a| g.inv(a)));
            y
        },
    )
}

/// `B_n G = G^n` with the bar faces: `d_0` drops `g_1`, `d_i` multiplies
/// `g_i g_{i+1}`, `d_n` drops `g_n`; `r_n` reverses and inverts.
pub fn bar_reflexive_set(g: &FiniteGroup, max_level: usize) -> FiniteReflexiveSet {
    tuple_set(
        g,
        max_level,
        |n| n,
        |n, i, x| {
            if i == 0 {
                x[1..].to_vec()
            } else if i == n {
                x[..n - 1].to_vec()
            } else {
                let mut y = x.to_vec();
                y[i - 1] = g.mul(x[i - 1], x[i]);
                y.remove(i);
                y
            }
        },
        |j, x| {
            let mut y = x.to_vec();
            y.insert(j, g.identity());
            y
        },
        |x| x.iter().rev().map(|&a| g.inv(a)).collect(),
    )
}

/// Levelwise projection `(g_0, ..., g_n) -> (g_1, ..., g_n)`.
pub fn gamma_to_bar(g: &FiniteGroup, max_level: usize) -> Vec<Vec<usize>> {
    let o = g.order();
    (0..=max_level)
        .map(|n| {
            let tail = o.pow(n as u32);
            (0..o * tail).map(|x| x % tail).collect()
        })
        .collect()
}

fn permutation_like(rows: usize, map: &[usize]) -> Matrix {
    Matrix::from_triplets(rows, map.len(), map.iter().enumerate().map(|(x, &y)| (y, x, Scalar::one())))
}

/// The free module on each level, operators acting on basis elements by
/// the index maps.
pub fn linearize(x: &FiniteReflexiveSet, ring: Ring) -> DeltaRModule {
    let q = x.max_level();
    let faces = (0..=q)
        .map(|n| x.faces[n].iter().map(|f| permutation_like(x.size(n - 1), f)).collect())
        .collect();
    let degeneracies = (0..q)
        .map(|n| x.degeneracies[n].iter().map(|s| permutation_like(x.size(n + 1), s)).collect())
        .collect();
    let involutions = (0..=q).map(|n| permutation_like(x.size(n), &x.involutions[n])).collect();
    let ranks = (0..=q).map(|n| x.size(n)).collect();
    DeltaRModule::new(ring, ranks, faces, degeneracies, involutions).expect("index maps have consistent shapes")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn groups() -> Vec<FiniteGroup> {
        vec![
            FiniteGroup::trivial(),
            FiniteGroup::cyclic(2),
            FiniteGroup::cyclic(3),
            FiniteGroup::symmetric3(),
        ]
    }

    #[test]
    fn constructed_sets_validate() {
        for g in groups() {
            let q = if g.order() > 3 { 3 } else { 4 };
            assert!(gamma_reflexive_set(&g, q).validate().is_empty());
            assert!(bar_reflexive_set(&g, q).validate().is_empty());
            assert!(linearize(&bar_reflexive_set(&g, q), Ring::Integers).validate().is_empty());
            assert!(linearize(&gamma_reflexive_set(&g, q), Ring::Rationals).validate().is_empty());
        }
        assert!(FiniteReflexiveSet::point(4).validate().is_empty());
    }

    #[test]
    fn trivial_group_is_a_point() {
        let g = FiniteGroup::trivial();
        let point = FiniteReflexiveSet::point(3);
        for x in [gamma_reflexive_set(&g, 3), bar_reflexive_set(&g, 3)] {
            assert_eq!(x.faces, point.faces);
            assert_eq!(x.degeneracies, point.degeneracies);
            assert_eq!(x.involutions, point.involutions);
        }
    }

    #[test]
    fn involution_examples() {
        let c2 = FiniteGroup::cyclic(2);
        let gam = gamma_reflexive_set(&c2, 2);
        assert!((0..4).all(|x| gam.involution(1)[x] == x));
        let bar = bar_reflexive_set(&c2, 2);
        // (a, b) -> (b, a): index 2a + b
        assert_eq!(bar.involution(2), &[0, 2, 1, 3]);
        assert_eq!(bar.size(0), 1);

        let c3 = FiniteGroup::cyclic(3);
        let gam = gamma_reflexive_set(&c3, 1);
        for x in 0..9 {
            let (a, b) = (x / 3, x % 3);
            let y = gam.involution(1)[x];
            assert_eq!((y / 3, y % 3), ((2 * a) % 3, (2 * b) % 3));
        }
    }

    #[test]
    fn projection_is_a_map_of_reflexive_sets() {
        for g in groups() {
            let gam = gamma_reflexive_set(&g, 3);
            let bar = bar_reflexive_set(&g, 3);
            assert!(check_set_map(&gam, &bar, &gamma_to_bar(&g, 3)).is_empty());
        }
    }

    #[test]
    fn broken_sets_are_rejected() {
        let mut bar = bar_reflexive_set(&FiniteGroup::cyclic(3), 3);
        bar.involutions[2].swap(1, 2);
        assert!(bar.validate().iter().any(|v| v.axiom == "face-involution" || v.axiom == "involution"));
        let mut bar = bar_reflexive_set(&FiniteGroup::cyclic(3), 3);
        bar.faces[2][1][4] = 0;
        assert!(!bar.validate().is_empty());
        assert!(FiniteReflexiveSet::new(vec![vec!["a".into()]], vec![vec![]], vec![], vec![vec![1]]).is_err());
    }

    #[test]
    fn linearized_bar_of_c2_over_f2() {
        let f = linearize(&bar_reflexive_set(&FiniteGroup::cyclic(2), 2), Ring::PrimeField(2));
        assert_eq!(f.rank(1), 2);
        assert!(f.validate().is_empty());
    }
}
