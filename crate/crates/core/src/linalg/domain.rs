//! Working coefficient types used inside elimination routines.
//!
//! Matrices store rationals; elimination converts them once into the
//! cheapest exact representation for the ring in play.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ring::{mod_inverse_u64, Scalar};

pub(crate) trait Domain {
    type E: Clone + Debug + PartialEq;

    fn lift(&self, q: &Scalar) -> Self::E;
    fn lower(&self, e: &Self::E) -> Scalar;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn is_unit(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    /// Inverse of a unit.
    fn unit_inv(&self, a: &Self::E) -> Self::E;

    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(a, &self.neg(b))
    }
}

pub(crate) struct IntegerDomain;

impl Domain for IntegerDomain {
    type E = BigInt;

    fn lift(&self, q: &Scalar) -> BigInt {
        debug_assert!(q.is_integer());
        q.to_integer()
    }
    fn lower(&self, e: &BigInt) -> Scalar {
        BigRational::from_integer(e.clone())
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.abs().is_one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn unit_inv(&self, a: &BigInt) -> BigInt {
        a.clone()
    }
}

pub(crate) struct RationalField;

impl Domain for RationalField {
    type E = BigRational;

    fn lift(&self, q: &Scalar) -> BigRational {
        q.clone()
    }
    fn lower(&self, e: &BigRational) -> Scalar {
        e.clone()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_unit(&self, a: &BigRational) -> bool {
        !a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn unit_inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
}

pub(crate) struct PrimeFieldDomain {
    pub p: u64,
}

impl Domain for PrimeFieldDomain {
    type E = u64;

    fn lift(&self, q: &Scalar) -> u64 {
        let p = BigInt::from(self.p);
        let num = q.numer().mod_floor(&p).to_u64().expect("reduced");
        let den = q.denom().mod_floor(&p).to_u64().expect("reduced");
        debug_assert!(den != 0, "denominator divisible by {}", self.p);
        ((num as u128 * mod_inverse_u64(den, self.p) as u128) % self.p as u128) as u64
    }
    fn lower(&self, e: &u64) -> Scalar {
        BigRational::from_integer(BigInt::from(*e))
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_unit(&self, a: &u64) -> bool {
        *a != 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn unit_inv(&self, a: &u64) -> u64 {
        mod_inverse_u64(*a, self.p)
    }
}


/// Field routines dispatch: integers are treated through their fraction field.
macro_rules! with_field {
    ($ring:expr, $d:ident => $body:expr) => {
        match $ring {
            $crate::linalg::Ring::Integers | $crate::linalg::Ring::Rationals => {
                let $d = $crate::linalg::domain::RationalField;
                $body
            }
            $crate::linalg::Ring::PrimeField(p) => {
                let $d = $crate::linalg::domain::PrimeFieldDomain { p };
                $body
            }
        }
    };
}
pub(crate) use with_field;

pub(crate) fn sparse_rows<D: Domain>(d: &D, m: &super::Matrix) -> Vec<Vec<(usize, D::E)>> {
    m.rows_iter()
        .map(|row| {
            row.iter()
                .map(|(j, v)| (*j, d.lift(v)))
                .filter(|(_, v)| !d.is_zero(v))
                .collect()
        })
        .collect()
}
