use serde::{Deserialize, Serialize};

use crate::algebra::{group_algebra, loday_module};
use crate::linalg::{HomologyGroup, Ring};
use crate::reflexive::{hochschild_homology, hr, EngineError};
use crate::validation::{compare_homology, Check};

use super::{
    bar_reflexive_set, conjugacy_data, em_reflexive_module, linearize, EmCoefficients, FiniteGroup, GroupError,
};

/// `HR_n(G, k)` for `n <= n_max`, from the linearized bar construction.
pub fn hr_group(g: &FiniteGroup, ring: Ring, n_max: usize) -> Result<Vec<HomologyGroup>, GroupError> {
    let f = linearize(&bar_reflexive_set(g, n_max + 1), ring);
    Ok(hr(&f, n_max)?)
}

/// Reflexive homology of the Eilenberg-Mac Lane module with the given
/// coefficients.
pub fn hr_em(g: &FiniteGroup, coefficients: &EmCoefficients, ring: Ring, n_max: usize) -> Result<Vec<HomologyGroup>, GroupError> {
    let f = em_reflexive_module(g, coefficients, ring, n_max + 1)?;
    Ok(hr(&f, n_max)?)
}

/// `HR^+(k[G])` through the Loday module of the group algebra.
pub fn hr_group_algebra(g: &FiniteGroup, ring: Ring, n_max: usize) -> Result<Vec<HomologyGroup>, GroupError> {
    let a = group_algebra(g, ring);
    let f = loday_module(&a, &a.regular_bimodule(), 1, n_max + 1).map_err(EngineError::from)?;
    Ok(hr(&f, n_max)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSummand {
    pub classes: Vec<usize>,
    pub representatives: Vec<usize>,
    pub homology: Vec<HomologyGroup>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub group_algebra: Vec<HomologyGroup>,
    pub full_sum: Vec<HomologyGroup>,
    pub orbits: Vec<OrbitSummand>,
    pub group_homology: Vec<HomologyGroup>,
    pub checks: Vec<Check>,
}

impl DecompositionReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn sum_degreewise(ring: Ring, parts: &[&[HomologyGroup]], n_max: usize) -> Vec<HomologyGroup> {
    (0..=n_max)
        .map(|n| parts.iter().fold(HomologyGroup::zero(ring), |acc, p| acc.direct_sum(&p[n])))
        .collect()
}

/// Name prefix of the check asserting `HR^+(k[G]) = |G|` copies of
/// `HR^+(G, k)` for abelian `G`. It fails as soon as some `z != z^-1`.
pub const ABELIAN_SHORTCUT: &str = "abelian shortcut";

/// Compares `HR^+(k[G])` with the Eilenberg-Mac Lane side of the
/// conjugacy-class decomposition: the full coefficient sum, the sum over
/// inversion orbits, the identity component, components of central
/// involutions and, for abelian groups, `|G|` copies of `HR^+(G, k)`.
pub fn decomposition_check(g: &FiniteGroup, ring: Ring, n_max: usize) -> Result<DecompositionReport, GroupError> {
    let data = conjugacy_data(g);
    let group_algebra = hr_group_algebra(g, ring, n_max)?;
    let full_sum = hr_em(g, &EmCoefficients::Conjugation, ring, n_max)?;
    let group_homology = hr_group(g, ring, n_max)?;
    let mut orbits = Vec::new();
    for orbit in &data.inversion_orbits {
        orbits.push(OrbitSummand {
            classes: orbit.clone(),
            representatives: orbit.iter().map(|&c| data.classes[c].representative).collect(),
            homology: hr_em(g, &EmCoefficients::Classes(orbit.clone()), ring, n_max)?,
        });
    }
    let parts: Vec<&[HomologyGroup]> = orbits.iter().map(|o| o.homology.as_slice()).collect();
    let orbit_sum = sum_degreewise(ring, &parts, n_max);

    let mut checks = vec![
        compare_homology("group algebra = full coefficient sum", &group_algebra, &full_sum),
        compare_homology("group algebra = sum over inversion orbits", &group_algebra, &orbit_sum),
    ];
    let identity_orbit = &orbits[data.orbit_of(data.class_of[g.identity()])];
    checks.push(compare_homology(
        "identity component = HR(G, k)",
        &identity_orbit.homology,
        &group_homology,
    ));
    for orbit in &orbits {
        let z = orbit.representatives[0];
        let central = data.classes[orbit.classes[0]].elements.len() == 1;
        if z != g.identity() && central && g.mul(z, z) == g.identity() {
            checks.push(compare_homology(
                format!("central involution {} component = HR(G, k)", g.labels()[z]),
                &orbit.homology,
                &group_homology,
            ));
        }
    }
    if g.is_abelian() {
        let copies = vec![group_homology.as_slice(); g.order()];
        checks.push(compare_homology(
            format!("{ABELIAN_SHORTCUT}: group algebra = {} copies of HR(G, k)", g.order()),
            &group_algebra,
            &sum_degreewise(ring, &copies, n_max),
        ));
        // inversion swaps <z> and <z^-1>, so a pair is a free C_2 summand and
        // contributes one copy of ordinary group homology
        let plain = hochschild_homology(&linearize(&bar_reflexive_set(g, n_max + 1), ring), n_max)?;
        let parts: Vec<&[HomologyGroup]> = (0..g.order())
            .filter(|&z| z <= g.inv(z))
            .map(|z| if z == g.inv(z) { group_homology.as_slice() } else { plain.as_slice() })
            .collect();
        checks.push(compare_homology(
            "abelian: self-inverse elements give HR(G, k), inverse pairs give H(G, k)",
            &group_algebra,
            &sum_degreewise(ring, &parts, n_max),
        ));
    }
    Ok(DecompositionReport {
        group_algebra,
        full_sum,
        orbits,
        group_homology,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_group_has_ground_ring_pattern() {
        let h = hr_group(&FiniteGroup::trivial(), Ring::Integers, 3).unwrap();
        let expected = vec![
            HomologyGroup::free(Ring::Integers, 1),
            HomologyGroup::new(Ring::Integers, 0, &[2]),
            HomologyGroup::zero(Ring::Integers),
            HomologyGroup::new(Ring::Integers, 0, &[2]),
        ];
        assert_eq!(h, expected);
    }

    #[test]
    fn degree_zero_over_rationals_is_one_dimensional() {
        for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric3()] {
            let h = hr_group(&g, Ring::Rationals, 1).unwrap();
            assert_eq!(h[0], HomologyGroup::free(Ring::Rationals, 1));
        }
    }

    // degrees 0 and 1 agree with a hand evaluation of the bicomplex; degree 2
    // is pinned from the engine
    #[test]
    fn c2_over_f2_pinned() {
        let h = hr_group(&FiniteGroup::cyclic(2), Ring::PrimeField(2), 2).unwrap();
        let dims: Vec<usize> = h.iter().map(|x| x.free_rank).collect();
        assert_eq!(dims, vec![1, 2, 3]);
    }

    #[test]
    fn c2_over_f2_decomposes() {
        let r = decomposition_check(&FiniteGroup::cyclic(2), Ring::PrimeField(2), 3).unwrap();
        assert!(r.all_passed(), "{:?}", r.checks);
        assert_eq!(r.orbits.len(), 2);
    }

    #[test]
    fn c3_over_rationals_decomposes_by_orbit() {
        for ring in [Ring::Rationals, Ring::PrimeField(2)] {
            let r = decomposition_check(&FiniteGroup::cyclic(3), ring, 3).unwrap();
            assert_eq!(r.orbits[1].classes, vec![1, 2]);
            // degree 0 is the coinvariants of g -> g^-1 on k[C_3]: two orbits
            assert_eq!(r.group_algebra[0], HomologyGroup::free(ring, 2));
            for c in &r.checks {
                assert_eq!(c.passed, !c.name.starts_with(ABELIAN_SHORTCUT), "{c}");
            }
        }
    }
}
