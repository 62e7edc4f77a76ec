use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::linalg::{Matrix, Ring, Scalar};
use crate::reflexive::DeltaRModule;

use super::reflexive_set::Tuples;
use super::{FiniteGroup, GroupError};

/// One conjugacy class with its smallest element as representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub elements: Vec<usize>,
    /// Elements commuting with the representative.
    pub centralizer: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyDecomposition {
    /// Ordered by representative.
    pub classes: Vec<ConjugacyClass>,
    /// `class_of[g]` indexes `classes`.
    pub class_of: Vec<usize>,
    /// Classes grouped under `<z> <-> <z^-1>`, each sorted.
    pub inversion_orbits: Vec<Vec<usize>>,
}

impl ConjugacyDecomposition {
    /// Index of the inversion orbit containing class `c`.
    pub fn orbit_of(&self, c: usize) -> usize {
        self.inversion_orbits
            .iter()
            .position(|o| o.contains(&c))
            .expect("orbits cover every class")
    }
}

pub fn conjugacy_data(g: &FiniteGroup) -> ConjugacyDecomposition {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for z in 0..n {
        if class_of[z] != usize::MAX {
            continue;
        }
        let mut elements: Vec<usize> = (0..n).map(|x| g.conjugate(z, x)).collect();
        elements.sort_unstable();
        elements.dedup();
        for &h in &elements {
            class_of[h] = classes.len();
        }
        let centralizer = (0..n).filter(|&x| g.mul(x, z) == g.mul(z, x)).collect();
        classes.push(ConjugacyClass {
            representative: z,
            elements,
            centralizer,
        });
    }
    let mut inversion_orbits = Vec::new();
    let mut placed = vec![false; classes.len()];
    for c in 0..classes.len() {
        if placed[c] {
            continue;
        }
        let partner = class_of[g.inv(classes[c].representative)];
        placed[c] = true;
        placed[partner] = true;
        let mut orbit = vec![c, partner];
        orbit.dedup();
        inversion_orbits.push(orbit);
    }
    ConjugacyDecomposition {
        classes,
        class_of,
        inversion_orbits,
    }
}

/// Coefficient module for the Eilenberg-Mac Lane complex, always a
/// conjugation-stable set `S` of group elements with `h . g = g^-1 h g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EmCoefficients {
    /// `k[G]` under conjugation, basis in element order.
    Conjugation,
    /// The sum of `k[G/G_z]` over the listed classes, realised as the span
    /// of the union of those classes. Must be closed under inversion.
    Classes(Vec<usize>),
    /// `k`, the class of the identity.
    Trivial,
}

/// The coefficient basis: sorted elements of the chosen classes.
pub fn coefficient_support(g: &FiniteGroup, coefficients: &EmCoefficients) -> Result<Vec<usize>, GroupError> {
    match coefficients {
        EmCoefficients::Conjugation => Ok((0..g.order()).collect()),
        EmCoefficients::Trivial => Ok(vec![g.identity()]),
        EmCoefficients::Classes(cs) => {
            let data = conjugacy_data(g);
            if let Some(&c) = cs.iter().find(|&&c| c >= data.classes.len()) {
                return Err(GroupError::UnknownClass(c));
            }
            let mut support: Vec<usize> = cs.iter().flat_map(|&c| data.classes[c].elements.clone()).collect();
            support.sort_unstable();
            support.dedup();
            if support.iter().any(|&h| support.binary_search(&g.inv(h)).is_err()) {
                let mut classes = cs.clone();
                classes.sort_unstable();
                classes.dedup();
                return Err(GroupError::OrbitNotInversionClosed { classes });
            }
            Ok(support)
        }
    }
}

/// `C_*(G, M)` as a module over the reflexive category: level `n` is
/// `M (x) k[G^n]`, basis `h (x) [g_1, ..., g_n]` indexed big-endian with `h`
/// leading. `d_0` acts by `g_1`, the middle faces multiply, `d_n` drops
/// `g_n`, degeneracies insert the identity, and
/// `R_n(h (x) [g_1..g_n]) = g^-1 h^-1 g (x) [g_n^-1..g_1^-1]` with
/// `g = g_1 ... g_n`. The `(-1)^{n(n+1)/2}` twist is the chain-level one the
/// engine applies to every module.
pub fn em_reflexive_module(
    g: &FiniteGroup,
    coefficients: &EmCoefficients,
    ring: Ring,
    max_level: usize,
) -> Result<DeltaRModule, GroupError> {
    let support = coefficient_support(g, coefficients)?;
    let pos = |h: usize| support.binary_search(&h).expect("support is conjugation and inversion stable");
    let s = support.len();
    let t = Tuples { order: g.order() };
    let decode = |x: usize, n: usize| (support[x / t.count(n)], t.decode(x % t.count(n), n));
    let encode = |h: usize, bar: &[usize]| pos(h) * t.count(bar.len()) + t.encode(bar);
    let rank = |n: usize| s * t.count(n);
    let map = |rows: usize, cols: usize, f: &dyn Fn(usize) -> usize| {
        Matrix::from_triplets(rows, cols, (0..cols).map(|x| (f(x), x, Scalar::one())))
    };

    let faces = (0..=max_level)
        .map(|n| {
            if n == 0 {
                return Vec::new();
            }
            (0..=n)
                .map(|i| {
                    map(rank(n - 1), rank(n), &|x| {
                        let (h, bar) = decode(x, n);
                        if i == 0 {
                            encode(g.conjugate(h, bar[0]), &bar[1..])
                        } else if i == n {
                            encode(h, &bar[..n - 1])
                        } else {
                            let mut b = bar.clone();
                            b[i - 1] = g.mul(bar[i - 1], bar[i]);
                            b.remove(i);
                            encode(h, &b)
                        }
                    })
                })
                .collect()
        })
        .collect();
    let degeneracies = (0..max_level)
        .map(|n| {
            (0..=n)
                .map(|j| {
                    map(rank(n + 1), rank(n), &|x| {
                        let (h, mut bar) = decode(x, n);
                        bar.insert(j, g.identity());
                        encode(h, &bar)
                    })
                })
                .collect()
        })
        .collect();
    let involutions = (0..=max_level)
        .map(|n| {
            map(rank(n), rank(n), &|x| {
                let (h, bar) = decode(x, n);
                let prod = g.product(&bar);
                let rev: Vec<usize> = bar.iter().rev().map(|&a| g.inv(a)).collect();
                encode(g.conjugate(g.inv(h), prod), &rev)
            })
        })
        .collect();
    let ranks = (0..=max_level).map(rank).collect();
    Ok(DeltaRModule::new(ring, ranks, faces, degeneracies, involutions)?)
}

/// Levelwise Mac Lane isomorphism from the Loday module of `k[G]` to the
/// conjugation-coefficient complex: `(g_0, ..., g_n)` goes to
/// `g_1 ... g_n g_0 (x) [g_1, ..., g_n]`.
pub fn mac_lane_map(g: &FiniteGroup, max_level: usize) -> Vec<Matrix> {
    let t = Tuples { order: g.order() };
    (0..=max_level)
        .map(|n| {
            let size = t.count(n + 1);
            Matrix::from_triplets(
                size,
                size,
                (0..size).map(|x| {
                    let tuple = t.decode(x, n + 1);
                    let h = g.mul(g.product(&tuple[1..]), tuple[0]);
                    let mut image = vec![h];
                    image.extend_from_slice(&tuple[1..]);
                    (t.encode(&image), x, Scalar::one())
                }),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_module_map, group_algebra, loday_module};
    use crate::groups::{bar_reflexive_set, linearize};
    use crate::reflexive::constant_module;

    #[test]
    fn conjugacy_examples() {
        let c4 = conjugacy_data(&FiniteGroup::cyclic(4));
        assert_eq!(c4.classes.len(), 4);
        assert!(c4.classes.iter().all(|c| c.centralizer.len() == 4));

        let s3 = conjugacy_data(&FiniteGroup::symmetric3());
        let sizes: Vec<usize> = s3.classes.iter().map(|c| c.elements.len()).collect();
        let cents: Vec<usize> = s3.classes.iter().map(|c| c.centralizer.len()).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        assert_eq!(cents, vec![6, 2, 3]);
        assert_eq!(s3.inversion_orbits, vec![vec![0], vec![1], vec![2]]);

        let c3 = conjugacy_data(&FiniteGroup::cyclic(3));
        assert_eq!(c3.inversion_orbits, vec![vec![0], vec![1, 2]]);
    }

    #[test]
    fn classes_are_conjugation_stable() {
        let g = FiniteGroup::symmetric3();
        let d = conjugacy_data(&g);
        for z in 0..6 {
            for x in 0..6 {
                assert_eq!(d.class_of[g.conjugate(z, x)], d.class_of[z]);
            }
        }
    }

    #[test]
    fn modules_validate() {
        for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric3()] {
            let q = if g.order() > 3 { 2 } else { 3 };
            let d = conjugacy_data(&g);
            let mut choices = vec![EmCoefficients::Conjugation, EmCoefficients::Trivial];
            choices.extend(d.inversion_orbits.iter().cloned().map(EmCoefficients::Classes));
            for c in choices {
                let f = em_reflexive_module(&g, &c, Ring::Integers, q).unwrap();
                assert!(f.validate().is_empty(), "{c:?}");
            }
        }
    }

    #[test]
    fn single_class_without_its_inverse_is_rejected() {
        let g = FiniteGroup::cyclic(3);
        let err = em_reflexive_module(&g, &EmCoefficients::Classes(vec![1]), Ring::Rationals, 2).unwrap_err();
        assert_eq!(err, GroupError::OrbitNotInversionClosed { classes: vec![1] });
        assert!(em_reflexive_module(&g, &EmCoefficients::Classes(vec![1, 2]), Ring::Rationals, 2).is_ok());
        assert!(matches!(
            em_reflexive_module(&g, &EmCoefficients::Classes(vec![7]), Ring::Rationals, 2),
            Err(GroupError::UnknownClass(7))
        ));
    }

    #[test]
    fn trivial_group_gives_the_constant_module() {
        let f = em_reflexive_module(&FiniteGroup::trivial(), &EmCoefficients::Conjugation, Ring::Integers, 4).unwrap();
        let k = constant_module(Ring::Integers, 4);
        for op in k.operators() {
            assert_eq!(f.operator(op), k.operator(op));
        }
        for n in 0..=4 {
            let expected = if (n * (n + 1) / 2) % 2 == 0 { 1 } else { -1 };
            assert_eq!(f.chain_involution(n).get(0, 0), Scalar::from_integer(expected.into()));
        }
    }

    #[test]
    fn trivial_coefficients_are_the_bar_construction() {
        let g = FiniteGroup::symmetric3();
        let f = em_reflexive_module(&g, &EmCoefficients::Trivial, Ring::Integers, 3).unwrap();
        let b = linearize(&bar_reflexive_set(&g, 3), Ring::Integers);
        for op in f.operators() {
            assert_eq!(f.operator(op), b.operator(op));
        }
    }

    #[test]
    fn c2_conjugation_action_is_trivial() {
        let g = FiniteGroup::cyclic(2);
        let f = em_reflexive_module(&g, &EmCoefficients::Conjugation, Ring::Integers, 2).unwrap();
        // d_0(h (x) [g]) = h
        assert_eq!(f.face(1, 0).as_ref(), &Matrix::from_rows(&[vec![1, 1, 0, 0], vec![0, 0, 1, 1]]));
    }

    #[test]
    fn mac_lane_map_intertwines_everything() {
        for g in [FiniteGroup::cyclic(3), FiniteGroup::symmetric3()] {
            let q = if g.order() > 3 { 2 } else { 3 };
            let a = group_algebra(&g, Ring::Integers);
            let l = loday_module(&a, &a.regular_bimodule(), 1, q).unwrap();
            let em = em_reflexive_module(&g, &EmCoefficients::Conjugation, Ring::Integers, q).unwrap();
            assert_eq!(em.ranks(), l.ranks());
            assert!(check_module_map(&l, &em, &mac_lane_map(&g, q)).is_empty());
        }
    }
}
