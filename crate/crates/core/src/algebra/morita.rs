use crate::linalg::{express_in_basis, free_quotient, Matrix, Ring, Scalar};
use crate::validation::{Collector, Violation};

use super::sparse::{apply_columns, collect, columns_of, tensor, unit_vector, SparseVector};
use super::{matrix_algebra, AlgebraError, Bimodule, InvolutiveAlgebra, InvolutiveBimodule};

/// Hermitian Morita data between `a` and `b`.
///
/// `u` acts on the plain tensor `P (x) Q` (basis index `p * rank(Q) + q`) and
/// `v` on `Q (x) P`; both are checked to be balanced. `theta: P -> Q`.
#[derive(Clone, Debug)]
pub struct HermitianMoritaData {
    pub a: InvolutiveAlgebra,
    pub b: InvolutiveAlgebra,
    /// `A`-`B` bimodule.
    pub p: Bimodule,
    /// `B`-`A` bimodule.
    pub q: Bimodule,
    pub u: Matrix,
    pub v: Matrix,
    pub theta: Matrix,
    /// `sum u(p_j (x) q_j) = 1_A`.
    pub p_elems: Vec<SparseVector>,
    pub q_elems: Vec<SparseVector>,
    /// `sum v(q'_k (x) p'_k) = 1_B`.
    pub p_prime: Vec<SparseVector>,
    pub q_prime: Vec<SparseVector>,
}

/// A bilinear map given by its matrix on the plain tensor product.
struct Pairing {
    ring: Ring,
    cols: Vec<SparseVector>,
    radices: [usize; 2],
}

impl Pairing {
    fn new(ring: Ring, m: &Matrix, r1: usize, r2: usize) -> Self {
        Pairing {
            ring,
            cols: columns_of(m),
            radices: [r1, r2],
        }
    }

    fn eval(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> SparseVector {
        apply_columns(self.ring, &self.cols, &tensor(&[x, y], &self.radices))
    }
}

fn sum(ring: Ring, vs: impl IntoIterator<Item = SparseVector>) -> SparseVector {
    collect(ring, vs.into_iter().flatten())
}

/// Inverse of `theta` over the ring, if it exists.
fn theta_inverse(d: &HermitianMoritaData) -> Result<Matrix, AlgebraError> {
    let n = d.theta.nrows();
    if d.theta.shape() != (n, n) {
        return Err(AlgebraError::NotInvertible("theta".into()));
    }
    express_in_basis(&Matrix::identity(n), &d.theta, d.a.ring()).map_err(|_| AlgebraError::NotInvertible("theta".into()))
}

/// Every Morita, Hermitian and compatibility condition checked on basis
/// tuples.
pub fn validate_morita_data(d: &HermitianMoritaData) -> Vec<Violation> {
    let mut out = d.a.validate();
    out.extend(d.b.validate());
    out.extend(d.p.validate(&d.a, &d.b));
    out.extend(d.q.validate(&d.b, &d.a));
    if !out.is_empty() {
        return out;
    }
    let ring = d.a.ring();
    let (ra, rb, rp, rq) = (d.a.rank(), d.b.rank(), d.p.rank(), d.q.rank());
    let mut c = Collector::new();
    if d.u.shape() != (ra, rp * rq) || d.v.shape() != (rb, rq * rp) || d.theta.shape() != (rq, rp) {
        c.push("shape", || "u, v or theta has the wrong shape".into());
        return c.finish();
    }
    let u = Pairing::new(ring, &d.u, rp, rq);
    let v = Pairing::new(ring, &d.v, rq, rp);
    let theta_cols = columns_of(&d.theta.reduce(ring).expect("entries in ring"));
    let theta = |x: &[(usize, Scalar)]| apply_columns(ring, &theta_cols, x);
    let e = unit_vector;

    for p in 0..rp {
        for q in 0..rq {
            let upq = u.eval(&e(p), &e(q));
            for k in 0..rb {
                c.check(
                    u.eval(d.p.right_action(p, k), &e(q)) == u.eval(&e(p), d.q.left_action(k, q)),
                    "u is balanced",
                    || format!("p{p} b{k} q{q}"),
                );
            }
            for i in 0..ra {
                c.check(
                    u.eval(d.p.left_action(i, p), &e(q)) == d.a.mul_vec(&e(i), &upq),
                    "u is a left module map",
                    || format!("a{i} p{p} q{q}"),
                );
                c.check(
                    u.eval(&e(p), d.q.right_action(q, i)) == d.a.mul_vec(&upq, &e(i)),
                    "u is a right module map",
                    || format!("p{p} q{q} a{i}"),
                );
            }
            for p2 in 0..rp {
                // u(p (x) q) p' = p v(q (x) p')
                let lhs = d.p.act_left(&upq, &e(p2));
                let rhs = d.p.act_right(&e(p), &v.eval(&e(q), &e(p2)));
                c.check(lhs == rhs, "u and v associate on P", || format!("p{p} q{q} p{p2}"));
            }
        }
    }
    for q in 0..rq {
        for p in 0..rp {
            let vqp = v.eval(&e(q), &e(p));
            for i in 0..ra {
                c.check(
                    v.eval(d.q.right_action(q, i), &e(p)) == v.eval(&e(q), d.p.left_action(i, p)),
                    "v is balanced",
                    || format!("q{q} a{i} p{p}"),
                );
            }
            for k in 0..rb {
                c.check(
                    v.eval(d.q.left_action(k, q), &e(p)) == d.b.mul_vec(&e(k), &vqp),
                    "v is a left module map",
                    || format!("b{k} q{q} p{p}"),
                );
                c.check(
                    v.eval(&e(q), d.p.right_action(p, k)) == d.b.mul_vec(&vqp, &e(k)),
                    "v is a right module map",
                    || format!("q{q} p{p} b{k}"),
                );
            }
            for q2 in 0..rq {
                let lhs = d.q.act_left(&vqp, &e(q2));
                let rhs = d.q.act_right(&e(q), &u.eval(&e(p), &e(q2)));
                c.check(lhs == rhs, "u and v associate on Q", || format!("q{q} p{p} q{q2}"));
            }
        }
    }

    let one_a = collect(ring, d.a.unit().clone());
    let one_b = collect(ring, d.b.unit().clone());
    c.check(d.p_elems.len() == d.q_elems.len(), "dual elements", || "p_j and q_j differ in number".into());
    c.check(d.p_prime.len() == d.q_prime.len(), "dual elements", || "p'_k and q'_k differ in number".into());
    let total_u = sum(ring, d.p_elems.iter().zip(&d.q_elems).map(|(x, y)| u.eval(x, y)));
    c.check(total_u == one_a, "u is onto", || "sum u(p_j (x) q_j) != 1".into());
    let total_v = sum(ring, d.q_prime.iter().zip(&d.p_prime).map(|(y, x)| v.eval(y, x)));
    c.check(total_v == one_b, "v is onto", || "sum v(q'_k (x) p'_k) != 1".into());

    c.check(theta_inverse(d).is_ok(), "theta is a bijection", || "theta is not invertible".into());
    for p in 0..rp {
        let tp = theta(&e(p));
        for i in 0..ra {
            c.check(
                theta(d.p.left_action(i, p)) == d.q.act_right(&tp, d.a.bar(i)),
                "theta reverses the A action",
                || format!("theta(a{i} p{p}) != theta(p{p}) bar(a{i})"),
            );
        }
        for k in 0..rb {
            c.check(
                theta(d.p.right_action(p, k)) == d.q.act_left(d.b.bar(k), &tp),
                "theta reverses the B action",
                || format!("theta(p{p} b{k}) != bar(b{k}) theta(p{p})"),
            );
        }
        for p2 in 0..rp {
            let tp2 = theta(&e(p2));
            c.check(
                u.eval(&e(p), &tp2) == d.a.bar_vec(&u.eval(&e(p2), &tp)),
                "u is hermitian",
                || format!("u(p{p} (x) theta p{p2})"),
            );
            c.check(
                v.eval(&tp, &e(p2)) == d.b.bar_vec(&v.eval(&tp2, &e(p))),
                "v is hermitian",
                || format!("v(theta p{p} (x) p{p2})"),
            );
        }
    }

    // theta must carry {p_j} onto {q_j} as sets
    let mut images: Vec<SparseVector> = d.p_elems.iter().map(|x| theta(x)).collect();
    let mut targets: Vec<SparseVector> = d.q_elems.iter().map(|y| collect(ring, y.clone())).collect();
    images.sort();
    targets.sort();
    c.check(images == targets, "theta is compatible with the dual elements", || {
        "theta does not send {p_j} onto {q_j}".into()
    });
    c.finish()
}

/// `A = B`, `P = Q = A`, `u = v` = multiplication, `theta = sigma`.
pub fn identity_morita_data(a: &InvolutiveAlgebra) -> HermitianMoritaData {
    let r = a.rank();
    let reg = a.regular_bimodule().module().clone();
    let cols: Vec<SparseVector> = (0..r * r).map(|k| a.product(k / r, k % r).clone()).collect();
    let mult = Matrix::from_columns(r, &cols);
    let one = vec![a.unit().clone()];
    HermitianMoritaData {
        a: a.clone(),
        b: a.clone(),
        p: reg.clone(),
        q: reg,
        u: mult.clone(),
        v: mult,
        theta: a.sigma().clone(),
        p_elems: one.clone(),
        q_elems: one.clone(),
        p_prime: one.clone(),
        q_prime: one,
    }
}

/// Morita data between `a` and `M_m(a)`: `P` row vectors, `Q` column
/// vectors, `theta` the conjugate transpose.
pub fn matrix_morita_data(a: &InvolutiveAlgebra, m: usize) -> Result<HermitianMoritaData, AlgebraError> {
    let b = matrix_algebra(a, m)?;
    let ring = a.ring();
    let r = a.rank();
    // vectors: basis (c, k) -> c * r + k; matrices: (s, t, k) -> (s * m + t) * r + k
    let vec_idx = |c: usize, k: usize| c * r + k;
    let mat_idx = |s: usize, t: usize, k: usize| (s * m + t) * r + k;
    let rv = m * r;
    let labels = |prefix: &str| -> Vec<String> {
        (0..m)
            .flat_map(|c| a.labels().iter().map(move |l| format!("{prefix}{}*{l}", c + 1)))
            .collect()
    };
    let shift = |c: usize, x: &SparseVector| -> SparseVector { x.iter().map(|(k, v)| (vec_idx(c, *k), v.clone())).collect() };

    // P: a_i (e_c x) = e_c (a_i x); (e_c x)(E_st y) = delta_cs e_t (x y)
    let p_left: Vec<Matrix> = (0..r)
        .map(|i| {
            let cols: Vec<SparseVector> = (0..rv).map(|idx| shift(idx / r, a.product(i, idx % r))).collect();
            Matrix::from_columns(rv, &cols)
        })
        .collect();
    let p_right: Vec<Matrix> = (0..m * m * r)
        .map(|bi| {
            let (s, t, y) = (bi / r / m, bi / r % m, bi % r);
            let cols: Vec<SparseVector> = (0..rv)
                .map(|idx| {
                    let (c, x) = (idx / r, idx % r);
                    if c == s {
                        shift(t, a.product(x, y))
                    } else {
                        Vec::new()
                    }
                })
                .collect();
            Matrix::from_columns(rv, &cols)
        })
        .collect();
    // Q: (E_st y)(e_c x) = delta_tc e_s (y x); (e_s x) a_i = e_s (x a_i)
    let q_left: Vec<Matrix> = (0..m * m * r)
        .map(|bi| {
            let (s, t, y) = (bi / r / m, bi / r % m, bi % r);
            let cols: Vec<SparseVector> = (0..rv)
                .map(|idx| {
                    let (c, x) = (idx / r, idx % r);
                    if c == t {
                        shift(s, a.product(y, x))
                    } else {
                        Vec::new()
                    }
                })
                .collect();
            Matrix::from_columns(rv, &cols)
        })
        .collect();
    let q_right: Vec<Matrix> = (0..r)
        .map(|i| {
            let cols: Vec<SparseVector> = (0..rv).map(|idx| shift(idx / r, a.product(idx % r, i))).collect();
            Matrix::from_columns(rv, &cols)
        })
        .collect();
    let p = Bimodule::from_matrices(ring, labels("row"), &p_left, &p_right)?;
    let q = Bimodule::from_matrices(ring, labels("col"), &q_left, &q_right)?;

    // u((e_c x) (x) (e_s y)) = delta_cs x y;  v((e_s x) (x) (e_c y)) = E_sc (x y)
    let mut u_cols = Vec::with_capacity(rv * rv);
    let mut v_cols = Vec::with_capacity(rv * rv);
    for first in 0..rv {
        for second in 0..rv {
            let (c1, x) = (first / r, first % r);
            let (c2, y) = (second / r, second % r);
            u_cols.push(if c1 == c2 { a.product(x, y).clone() } else { Vec::new() });
            v_cols.push(a.product(x, y).iter().map(|(k, val)| (mat_idx(c1, c2, *k), val.clone())).collect());
        }
    }
    let u = Matrix::from_columns(r, &u_cols);
    let v = Matrix::from_columns(b.rank(), &v_cols);
    let theta_cols: Vec<SparseVector> = (0..rv).map(|idx| shift(idx / r, a.bar(idx % r))).collect();
    let theta = Matrix::from_columns(rv, &theta_cols);
    let unit_at = |c: usize| shift(c, a.unit());
    Ok(HermitianMoritaData {
        a: a.clone(),
        b,
        p,
        q,
        u,
        v,
        theta,
        p_elems: vec![unit_at(0)],
        q_elems: vec![unit_at(0)],
        p_prime: (0..m).map(unit_at).collect(),
        q_prime: (0..m).map(unit_at).collect(),
    })
}

/// `Q (x)_A M (x)_A P` over `B` with involution
/// `q (x) m (x) p -> theta(p) (x) bar m (x) theta^{-1}(q)`.
pub fn induced_involutive_bimodule(d: &HermitianMoritaData, m: &InvolutiveBimodule) -> Result<InvolutiveBimodule, AlgebraError> {
    let mut report = validate_morita_data(d);
    report.extend(m.validate(&d.a));
    if !report.is_empty() {
        return Err(AlgebraError::Invalid(report));
    }
    let ring = d.a.ring();
    let (rq, rm, rp) = (d.q.rank(), m.rank(), d.p.rank());
    let idx = |q: usize, x: usize, p: usize| (q * rm + x) * rp + p;
    let mm = m.module();
    let mut relations = Vec::new();
    for q in 0..rq {
        for x in 0..rm {
            for p in 0..rp {
                for i in 0..d.a.rank() {
                    let mut col: Vec<(usize, Scalar)> =
                        d.q.right_action(q, i).iter().map(|(q2, v)| (idx(*q2, x, p), v.clone())).collect();
                    col.extend(mm.left_action(i, x).iter().map(|(x2, v)| (idx(q, *x2, p), -v.clone())));
                    relations.push(collect(ring, col));
                    let mut col: Vec<(usize, Scalar)> =
                        mm.right_action(x, i).iter().map(|(x2, v)| (idx(q, *x2, p), v.clone())).collect();
                    col.extend(d.p.left_action(i, p).iter().map(|(p2, v)| (idx(q, x, *p2), -v.clone())));
                    relations.push(collect(ring, col));
                }
            }
        }
    }
    let ambient = rq * rm * rp;
    let rel = Matrix::from_columns(ambient, &relations);
    let pres = free_quotient(&rel, ring)?;

    let theta_cols = columns_of(&d.theta.reduce(ring)?);
    let theta_inv_cols = columns_of(&theta_inverse(d)?);
    let mut j_cols = Vec::with_capacity(ambient);
    for q in 0..rq {
        for x in 0..rm {
            for p in 0..rp {
                // theta(p) lies in Q, theta^{-1}(q) in P
                j_cols.push(tensor(
                    &[&theta_cols[p], m.bar(x), &theta_inv_cols[q]],
                    &[rq, rm, rp],
                ));
            }
        }
    }
    let j = Matrix::from_columns(ambient, &j_cols);
    if !pres.proj.mul(&j).mul_in(&rel, ring)?.is_zero() {
        return Err(AlgebraError::IllDefinedInvolution);
    }
    let tau = pres.induced(&j, &pres).reduce(ring)?;
    let id_m = Matrix::identity(rm);
    let lefts: Vec<Matrix> = (0..d.b.rank())
        .map(|k| {
            let f = d.q.left_matrix(k).kron(&id_m).kron(&Matrix::identity(rp));
            pres.induced(&f, &pres).reduce(ring)
        })
        .collect::<Result<_, _>>()?;
    let rights: Vec<Matrix> = (0..d.b.rank())
        .map(|k| {
            let f = Matrix::identity(rq).kron(&id_m).kron(&d.p.right_matrix(k));
            pres.induced(&f, &pres).reduce(ring)
        })
        .collect::<Result<_, _>>()?;
    let labels = (0..pres.rank()).map(|k| format!("n{k}")).collect();
    let module = Bimodule::from_matrices(ring, labels, &lefts, &rights)?;
    InvolutiveBimodule::new(module, tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dual_numbers, gaussian_integers, ground_algebra};

    #[test]
    fn identity_data_is_valid() {
        for a in [ground_algebra(Ring::Integers), gaussian_integers(Ring::Integers), dual_numbers(Ring::Rationals)] {
            let d = identity_morita_data(&a);
            assert!(validate_morita_data(&d).is_empty());
            let n = induced_involutive_bimodule(&d, &a.regular_bimodule()).unwrap();
            assert_eq!(n.rank(), a.rank());
            assert!(n.validate(&a).is_empty());
        }
    }

    #[test]
    fn matrix_data_is_valid() {
        for a in [ground_algebra(Ring::Integers), gaussian_integers(Ring::Integers)] {
            let d = matrix_morita_data(&a, 2).unwrap();
            assert_eq!(validate_morita_data(&d), vec![]);
            let n = induced_involutive_bimodule(&d, &a.regular_bimodule()).unwrap();
            assert_eq!(n.rank(), 4 * a.rank());
            assert!(n.validate(&d.b).is_empty());
        }
    }

    #[test]
    fn doubled_theta_is_rejected() {
        let mut d = matrix_morita_data(&ground_algebra(Ring::Integers), 2).unwrap();
        d.theta = d.theta.scale(&Scalar::from_integer(2.into()));
        let report = validate_morita_data(&d);
        assert!(report.iter().any(|v| v.axiom == "theta is compatible with the dual elements"));
    }
}
