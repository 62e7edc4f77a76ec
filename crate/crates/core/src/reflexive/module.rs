use std::sync::Arc;

use crate::linalg::{Matrix, Ring, Scalar};
use crate::validation::{Collector, Violation};

use super::EngineError;

/// Simplicial module with compatible involutions `R_n`, truncated at level
/// `max_level`.
#[derive(Clone, Debug)]
pub struct DeltaRModule {
    ring: Ring,
    ranks: Vec<usize>,
    /// `faces[n][i]` for `1 <= n`, `0 <= i <= n`; `faces[0]` is empty.
    faces: Vec<Vec<Arc<Matrix>>>,
    /// `degeneracies[n][j]` for `n < max_level`, `0 <= j <= n`.
    degeneracies: Vec<Vec<Arc<Matrix>>>,
    involutions: Vec<Arc<Matrix>>,
}

impl DeltaRModule {
    /// Checks shapes and reduces every matrix into `ring`. The structural
    /// identities are checked by [`DeltaRModule::validate`].
    pub fn new(
        ring: Ring,
        ranks: Vec<usize>,
        faces: Vec<Vec<Matrix>>,
        degeneracies: Vec<Vec<Matrix>>,
        involutions: Vec<Matrix>,
    ) -> Result<Self, EngineError> {
        let q = ranks.len().checked_sub(1).ok_or_else(|| shape("a module needs level 0"))?;
        if faces.len() != q + 1 || degeneracies.len() != q || involutions.len() != q + 1 {
            return Err(shape(&format!(
                "{} levels need {} face lists, {q} degeneracy lists and {} involutions",
                q + 1,
                q + 1,
                q + 1
            )));
        }
        let mut out_faces = Vec::with_capacity(q + 1);
        for (n, fs) in faces.into_iter().enumerate() {
            let expected = if n == 0 { 0 } else { n + 1 };
            if fs.len() != expected {
                return Err(shape(&format!("level {n} needs {expected} faces, got {}", fs.len())));
            }
            let mut level = Vec::with_capacity(expected);
            for (i, f) in fs.into_iter().enumerate() {
                check(&f, ranks[n - 1], ranks[n], &format!("face {i} on level {n}"))?;
                level.push(Arc::new(f.reduce(ring)?));
            }
            out_faces.push(level);
        }
        let mut out_degen = Vec::with_capacity(q);
        for (n, ss) in degeneracies.into_iter().enumerate() {
            if ss.len() != n + 1 {
                return Err(shape(&format!("level {n} needs {} degeneracies, got {}", n + 1, ss.len())));
            }
            let mut level = Vec::with_capacity(n + 1);
            for (j, s) in ss.into_iter().enumerate() {
                check(&s, ranks[n + 1], ranks[n], &format!("degeneracy {j} on level {n}"))?;
                level.push(Arc::new(s.reduce(ring)?));
            }
            out_degen.push(level);
        }
        let mut out_inv = Vec::with_capacity(q + 1);
        for (n, r) in involutions.into_iter().enumerate() {
            check(&r, ranks[n], ranks[n], &format!("involution on level {n}"))?;
            out_inv.push(Arc::new(r.reduce(ring)?));
        }
        Ok(DeltaRModule {
            ring,
            ranks,
            faces: out_faces,
            degeneracies: out_degen,
            involutions: out_inv,
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn max_level(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks[n]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn face(&self, n: usize, i: usize) -> &Arc<Matrix> {
        &self.faces[n][i]
    }

    pub fn degeneracy(&self, n: usize, j: usize) -> &Arc<Matrix> {
        &self.degeneracies[n][j]
    }

    pub fn involution(&self, n: usize) -> &Arc<Matrix> {
        &self.involutions[n]
    }

    /// Hochschild-type boundary `b = sum (-1)^i d_i` out of level `n >= 1`.
    pub fn boundary(&self, n: usize) -> Matrix {
        let mut acc = Matrix::zeros(self.ranks[n - 1], self.ranks[n]);
        for (i, f) in self.faces[n].iter().enumerate() {
            acc = if i % 2 == 0 { acc.add(f) } else { acc.sub(f) };
        }
        acc.reduce(self.ring).expect("sum of ring matrices stays in the ring")
    }

    /// The same simplicial module with every involution multiplied by `sign`.
    pub fn with_sign(&self, sign: i8) -> DeltaRModule {
        if sign > 0 {
            return self.clone();
        }
        let involutions = self
            .involutions
            .iter()
            .map(|r| Arc::new(r.neg().reduce(self.ring).expect("negation stays in the ring")))
            .collect();
        DeltaRModule {
            involutions,
            ..self.clone()
        }
    }

    /// Involutions twisted by `(-1)^{n(n+1)/2}` on level `n`.
    pub fn chain_involution(&self, n: usize) -> Matrix {
        let r = &self.involutions[n];
        if (n * (n + 1) / 2).is_multiple_of(2) {
            r.as_ref().clone()
        } else {
            r.neg().reduce(self.ring).expect("negation stays in the ring")
        }
    }

    /// The same operator matrices read over `ring`. Meaningful when every
    /// entry is an integer, e.g. for a module built over the integers.
    pub fn change_ring(&self, ring: Ring) -> Result<DeltaRModule, EngineError> {
        let conv = |m: &Arc<Matrix>| -> Result<Matrix, EngineError> { Ok(m.reduce(ring)?) };
        let faces = self.faces.iter().map(|l| l.iter().map(conv).collect()).collect::<Result<_, _>>()?;
        let degens = self.degeneracies.iter().map(|l| l.iter().map(conv).collect()).collect::<Result<_, _>>()?;
        let invs = self.involutions.iter().map(conv).collect::<Result<_, _>>()?;
        DeltaRModule::new(ring, self.ranks.clone(), faces, degens, invs)
    }

    /// Levels `0..=q`.
    pub fn truncated(&self, q: usize) -> DeltaRModule {
        let q = q.min(self.max_level());
        DeltaRModule {
            ring: self.ring,
            ranks: self.ranks[..=q].to_vec(),
            faces: self.faces[..=q].to_vec(),
            degeneracies: self.degeneracies[..q].to_vec(),
            involutions: self.involutions[..=q].to_vec(),
        }
    }

    /// Levelwise direct sum.
    pub fn direct_sum(&self, other: &DeltaRModule) -> Result<DeltaRModule, EngineError> {
        if self.ring != other.ring {
            return Err(shape("direct sum across rings"));
        }
        let q = self.max_level().min(other.max_level());
        let block = |a: &Matrix, b: &Matrix| -> Matrix {
            let (ar, ac) = a.shape();
            let trip: Vec<(usize, usize, Scalar)> = a
                .triplets()
                .map(|(i, j, v)| (i, j, v.clone()))
                .chain(b.triplets().map(|(i, j, v)| (ar + i, ac + j, v.clone())))
                .collect();
            Matrix::from_triplets(ar + b.nrows(), ac + b.ncols(), trip)
        };
        let ranks = (0..=q).map(|n| self.ranks[n] + other.ranks[n]).collect();
        let faces = (0..=q)
            .map(|n| {
                (0..self.faces[n].len())
                    .map(|i| block(&self.faces[n][i], &other.faces[n][i]))
                    .collect()
            })
            .collect();
        let degens = (0..q)
            .map(|n| (0..=n).map(|j| block(&self.degeneracies[n][j], &other.degeneracies[n][j])).collect())
            .collect();
        let invs = (0..=q).map(|n| block(&self.involutions[n], &other.involutions[n])).collect();
        DeltaRModule::new(self.ring, ranks, faces, degens, invs)
    }

    /// Simplicial identities, `R_n^2 = 1`, `d_i R_n = R_{n-1} d_{n-i}` and
    /// `s_j R_n = R_{n+1} s_{n-j}` on every stored level.
    pub fn validate(&self) -> Vec<Violation> {
        let ring = self.ring;
        let q = self.max_level();
        let mut c = Collector::new();
        let eq = |a: &Matrix, b: &Matrix, x: &Matrix, y: &Matrix| -> bool {
            a.mul_in(b, ring).expect("shapes checked") == x.mul_in(y, ring).expect("shapes checked")
        };
        for n in 0..=q {
            let r = &self.involutions[n];
            c.check(
                r.mul_in(r, ring).expect("square").is_identity(),
                "involution squares to identity",
                || format!("level {n}"),
            );
        }
        for n in 2..=q {
            for j in 1..=n {
                for i in 0..j {
                    let ok = eq(&self.faces[n - 1][i], &self.faces[n][j], &self.faces[n - 1][j - 1], &self.faces[n][i]);
                    c.check(ok, "face-face identity", || format!("d{i} d{j} != d{} d{i} on level {n}", j - 1));
                }
            }
        }
        for n in 0..q.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    let ok = eq(
                        &self.degeneracies[n + 1][i],
                        &self.degeneracies[n][j],
                        &self.degeneracies[n + 1][j + 1],
                        &self.degeneracies[n][i],
                    );
                    c.check(ok, "degeneracy-degeneracy identity", || {
                        format!("s{i} s{j} != s{} s{i} on level {n}", j + 1)
                    });
                }
            }
        }
        for n in 0..q {
            for j in 0..=n {
                let s = &self.degeneracies[n][j];
                for i in 0..=n + 1 {
                    let lhs = self.faces[n + 1][i].mul_in(s, ring).expect("shapes checked");
                    let rhs = if i == j || i == j + 1 {
                        Matrix::identity(self.ranks[n])
                    } else if i < j {
                        self.degeneracies[n - 1][j - 1].mul_in(&self.faces[n][i], ring).expect("shapes checked")
                    } else {
                        self.degeneracies[n - 1][j].mul_in(&self.faces[n][i - 1], ring).expect("shapes checked")
                    };
                    c.check(lhs == rhs, "face-degeneracy identity", || format!("d{i} s{j} on level {n}"));
                }
            }
        }
        for n in 1..=q {
            for i in 0..=n {
                let ok = eq(
                    &self.faces[n][i],
                    &self.involutions[n],
                    &self.involutions[n - 1],
                    &self.faces[n][n - i],
                );
                c.check(ok, "face-involution relation", || format!("d{i} R{n} != R{} d{}", n - 1, n - i));
            }
        }
        for n in 0..q {
            for j in 0..=n {
                let ok = eq(
                    &self.degeneracies[n][j],
                    &self.involutions[n],
                    &self.involutions[n + 1],
                    &self.degeneracies[n][n - j],
                );
                c.check(ok, "degeneracy-involution relation", || {
                    format!("s{j} R{n} != R{} s{}", n + 1, n - j)
                });
            }
        }
        c.finish()
    }

    pub fn validated(self) -> Result<Self, EngineError> {
        let v = self.validate();
        if v.is_empty() {
            Ok(self)
        } else {
            Err(EngineError::Invalid(v))
        }
    }

    /// Copy with one entry of one operator matrix replaced; used to probe
    /// the validator.
    pub fn perturbed(&self, op: Operator, row: usize, col: usize, delta: &Scalar) -> DeltaRModule {
        let bump = |m: &Arc<Matrix>| -> Arc<Matrix> {
            let e = Matrix::from_triplets(m.nrows(), m.ncols(), [(row, col, delta.clone())]);
            Arc::new(m.add(&e).reduce(self.ring).expect("perturbation stays in the ring"))
        };
        let mut out = self.clone();
        match op {
            Operator::Face(n, i) => out.faces[n][i] = bump(&self.faces[n][i]),
            Operator::Degeneracy(n, j) => out.degeneracies[n][j] = bump(&self.degeneracies[n][j]),
            Operator::Involution(n) => out.involutions[n] = bump(&self.involutions[n]),
        }
        out
    }

    /// Every stored operator.
    pub fn operators(&self) -> Vec<Operator> {
        let q = self.max_level();
        let mut out = Vec::new();
        for n in 0..=q {
            if n > 0 {
                out.extend((0..=n).map(|i| Operator::Face(n, i)));
            }
            if n < q {
                out.extend((0..=n).map(|j| Operator::Degeneracy(n, j)));
            }
            out.push(Operator::Involution(n));
        }
        out
    }

    pub fn operator(&self, op: Operator) -> &Arc<Matrix> {
        match op {
            Operator::Face(n, i) => &self.faces[n][i],
            Operator::Degeneracy(n, j) => &self.degeneracies[n][j],
            Operator::Involution(n) => &self.involutions[n],
        }
    }
}

/// Names one generating operator of a [`DeltaRModule`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operator {
    Face(usize, usize),
    Degeneracy(usize, usize),
    Involution(usize),
}

fn shape(msg: &str) -> EngineError {
    EngineError::ShapeMismatch(msg.to_string())
}

fn check(m: &Matrix, rows: usize, cols: usize, what: &str) -> Result<(), EngineError> {
    if m.shape() != (rows, cols) {
        return Err(shape(&format!("{what} is {:?}, expected {rows}x{cols}", m.shape())));
    }
    Ok(())
}

/// The constant module: rank one on every level, every operator the
/// identity.
pub fn constant_module(ring: Ring, max_level: usize) -> DeltaRModule {
    let one = || Matrix::identity(1);
    DeltaRModule::new(
        ring,
        vec![1; max_level + 1],
        (0..=max_level).map(|n| if n == 0 { Vec::new() } else { vec![one(); n + 1] }).collect(),
        (0..max_level).map(|n| vec![one(); n + 1]).collect(),
        vec![one(); max_level + 1],
    )
    .expect("constant data is consistent")
}
