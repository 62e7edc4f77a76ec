use std::sync::Arc;

use crate::complexes::{total_complex_3_upto, Tricomplex};
use crate::linalg::{HomologyGroup, Matrix};
use crate::validation::{Collector, Violation};

use super::engine::epsilon;
use super::{DeltaRModule, EngineError};

/// Chain complex of modules over the reflexive category in internal degrees
/// `0..=top`.
#[derive(Clone, Debug)]
pub struct ReflexiveChainComplex {
    modules: Vec<DeltaRModule>,
    /// `differentials[s - 1][n]`: level `n` of module `s` to level `n` of
    /// module `s - 1`.
    differentials: Vec<Vec<Matrix>>,
}

impl ReflexiveChainComplex {
    /// Checks shapes, `d^2 = 0` and that every differential commutes with
    /// faces, degeneracies and involutions.
    pub fn new(modules: Vec<DeltaRModule>, differentials: Vec<Vec<Matrix>>) -> Result<Self, EngineError> {
        if modules.is_empty() || differentials.len() + 1 != modules.len() {
            return Err(EngineError::ShapeMismatch(format!(
                "{} modules need {} differentials",
                modules.len(),
                modules.len().saturating_sub(1)
            )));
        }
        let ring = modules[0].ring();
        let q = modules.iter().map(DeltaRModule::max_level).min().expect("nonempty");
        let mut reduced = Vec::with_capacity(differentials.len());
        for (s, ds) in differentials.into_iter().enumerate() {
            if ds.len() < q + 1 {
                return Err(EngineError::ShapeMismatch(format!("differential {} needs {} levels", s + 1, q + 1)));
            }
            let mut level = Vec::with_capacity(q + 1);
            for (n, d) in ds.into_iter().take(q + 1).enumerate() {
                let want = (modules[s].rank(n), modules[s + 1].rank(n));
                if d.shape() != want {
                    return Err(EngineError::ShapeMismatch(format!(
                        "differential {} on level {n} is {:?}, expected {want:?}",
                        s + 1,
                        d.shape()
                    )));
                }
                level.push(d.reduce(ring)?);
            }
            reduced.push(level);
        }
        let modules = modules.into_iter().map(|m| m.truncated(q)).collect();
        let out = ReflexiveChainComplex {
            modules,
            differentials: reduced,
        };
        let report = out.validate();
        if report.is_empty() {
            Ok(out)
        } else {
            Err(EngineError::Invalid(report))
        }
    }

    /// A single module in internal degree 0.
    pub fn concentrated(f: DeltaRModule) -> Self {
        ReflexiveChainComplex {
            modules: vec![f],
            differentials: Vec::new(),
        }
    }

    pub fn top_degree(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn max_level(&self) -> usize {
        self.modules[0].max_level()
    }

    pub fn module(&self, s: usize) -> &DeltaRModule {
        &self.modules[s]
    }

    fn validate(&self) -> Vec<Violation> {
        let mut c = Collector::new();
        let ring = self.modules[0].ring();
        let q = self.max_level();
        for (s, ds) in self.differentials.iter().enumerate() {
            let (src, dst) = (&self.modules[s + 1], &self.modules[s]);
            for n in 0..=q {
                let d = &ds[n];
                let ok = dst.involution(n).mul_in(d, ring).expect("shapes") == d.mul_in(src.involution(n), ring).expect("shapes");
                c.check(ok, "differential commutes with involutions", || format!("degree {}, level {n}", s + 1));
                if n > 0 {
                    for i in 0..=n {
                        let ok = dst.face(n, i).mul_in(d, ring).expect("shapes")
                            == ds[n - 1].mul_in(src.face(n, i), ring).expect("shapes");
                        c.check(ok, "differential commutes with faces", || format!("degree {}, d{i} on level {n}", s + 1));
                    }
                }
                if n < q {
                    for j in 0..=n {
                        let ok = dst.degeneracy(n, j).mul_in(d, ring).expect("shapes")
                            == ds[n + 1].mul_in(src.degeneracy(n, j), ring).expect("shapes");
                        c.check(ok, "differential commutes with degeneracies", || {
                            format!("degree {}, s{j} on level {n}", s + 1)
                        });
                    }
                }
                if s > 0 {
                    let sq = self.differentials[s - 1][n].mul_in(d, ring).expect("shapes");
                    c.check(sq.is_zero(), "internal differential squares to zero", || {
                        format!("degree {}, level {n}", s + 1)
                    });
                }
            }
        }
        c.finish()
    }
}

/// Reflexive hyperhomology in degrees `0..=n_max`, from the total complex
/// of the tricomplex (resolution direction, simplicial level, internal
/// degree).
pub fn hyper_hr(fc: &ReflexiveChainComplex, n_max: usize) -> Result<Vec<HomologyGroup>, EngineError> {
    let top = n_max + 1;
    if fc.max_level() < top {
        return Err(EngineError::LevelTooLow {
            needed: top,
            available: fc.max_level(),
        });
    }
    let ring = fc.modules[0].ring();
    let s_max = fc.top_degree().min(top);
    let mut horizontal: Vec<Vec<[Arc<Matrix>; 2]>> = Vec::new();
    let mut vertical: Vec<Vec<Arc<Matrix>>> = Vec::new();
    for f in &fc.modules[..=s_max] {
        let mut h = Vec::new();
        let mut v = Vec::new();
        for q in 0..=top {
            let id = Matrix::identity(f.rank(q));
            h.push([
                Arc::new(id.add(f.involution(q)).reduce(ring)?),
                Arc::new(id.sub(f.involution(q)).reduce(ring)?),
            ]);
            v.push(Arc::new(if q == 0 { Matrix::zeros(0, f.rank(0)) } else { f.boundary(q) }));
        }
        horizontal.push(h);
        vertical.push(v);
    }
    let internal: Vec<Vec<Arc<Matrix>>> = fc.differentials[..s_max]
        .iter()
        .map(|ds| ds.iter().map(|d| Arc::new(d.clone())).collect())
        .collect();
    let t = Tricomplex::new(
        ring,
        (top, top, s_max),
        |_, q, s| fc.modules[s].rank(q),
        |p, q, s| horizontal[s][q][if epsilon(p, q) > 0 { 0 } else { 1 }].clone(),
        |_, q, s| vertical[s][q].clone(),
        |_, q, s| internal[s - 1][q].clone(),
    )?;
    Ok(total_complex_3_upto(&t, top)?.homology_range(0, n_max)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dual_numbers, ground_algebra, loday_module};
    use crate::linalg::{HomologyGroup, Ring};
    use crate::reflexive::hr;

    fn sample() -> DeltaRModule {
        let a = dual_numbers(Ring::Integers);
        loday_module(&a, &a.regular_bimodule(), 1, 4).unwrap()
    }

    #[test]
    fn concentrated_complex_is_hr() {
        let f = sample();
        let fc = ReflexiveChainComplex::concentrated(f.clone());
        assert_eq!(hyper_hr(&fc, 3).unwrap(), hr(&f, 3).unwrap());
    }

    #[test]
    fn contractible_coefficients() {
        let k = ground_algebra(Ring::Integers);
        let f = loday_module(&k, &k.regular_bimodule(), 1, 3).unwrap();
        let ids = (0..=3).map(|n| Matrix::identity(f.rank(n))).collect();
        let fc = ReflexiveChainComplex::new(vec![f.clone(), f], vec![ids]).unwrap();
        assert!(hyper_hr(&fc, 2).unwrap().iter().all(HomologyGroup::is_zero));
    }

    #[test]
    fn split_two_copies() {
        let f = sample();
        let zeros = (0..=4).map(|n| Matrix::zeros(f.rank(n), f.rank(n))).collect();
        let fc = ReflexiveChainComplex::new(vec![f.clone(), f.clone()], vec![zeros]).unwrap();
        let h = hr(&f, 3).unwrap();
        let hyper = hyper_hr(&fc, 3).unwrap();
        assert_eq!(hyper[0], h[0]);
        for n in 1..=3 {
            assert_eq!(hyper[n], h[n].direct_sum(&h[n - 1]));
        }
    }

    #[test]
    fn non_equivariant_differential_is_rejected() {
        let f = sample();
        let mut ds: Vec<Matrix> = (0..=4).map(|n| Matrix::identity(f.rank(n))).collect();
        ds[1] = Matrix::from_rows(&[vec![1, 0], vec![0, 0]]).kron(&Matrix::identity(f.rank(1) / 2));
        assert!(matches!(
            ReflexiveChainComplex::new(vec![f.clone(), f], vec![ds]),
            Err(EngineError::Invalid(_))
        ));
    }
}
