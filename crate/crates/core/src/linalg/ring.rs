use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::LinalgError;

/// Exact scalar carried by every [`Matrix`](super::Matrix).
///
/// Integer and prime-field data is stored with denominator one; prime-field
/// entries are kept reduced into `0..p`.
pub type Scalar = BigRational;

/// Coefficient ring of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Integers,
    Rationals,
    PrimeField(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring {
    pub fn prime_field(p: u64) -> Result<Ring, LinalgError> {
        if is_prime(p) {
            Ok(Ring::PrimeField(p))
        } else {
            Err(LinalgError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Ring::Integers | Ring::Rationals => 0,
            Ring::PrimeField(p) => *p,
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Ring::Integers)
    }

    pub fn two_invertible(&self) -> bool {
        match self {
            Ring::Integers => false,
            Ring::Rationals => true,
            Ring::PrimeField(p) => *p != 2,
        }
    }

    /// Brings a rational into the canonical representative for this ring.
    pub fn normalize(&self, q: &Scalar) -> Result<Scalar, LinalgError> {
        match self {
            Ring::Rationals => Ok(q.clone()),
            Ring::Integers => {
                if q.is_integer() {
                    Ok(q.clone())
                } else {
                    Err(LinalgError::NotInRing {
                        value: q.to_string(),
                        ring: *self,
                    })
                }
            }
            Ring::PrimeField(p) => {
                let p = BigInt::from(*p);
                let num = q.numer().mod_floor(&p);
                let den = q.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(LinalgError::NotInRing {
                        value: q.to_string(),
                        ring: *self,
                    });
                }
                let inv = mod_inverse(&den, &p).expect("prime modulus");
                Ok(BigRational::from_integer((num * inv).mod_floor(&p)))
            }
        }
    }

    pub fn symbol(&self) -> String {
        match self {
            Ring::Integers => "Z".to_string(),
            Ring::Rationals => "Q".to_string(),
            Ring::PrimeField(p) => format!("F{p}"),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbol())
    }
}

pub(crate) fn mod_inverse(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let g = a.extended_gcd(p);
    if g.gcd.is_one() {
        Some(g.x.mod_floor(p))
    } else {
        None
    }
}

pub(crate) fn mod_inverse_u64(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "{a} not invertible mod {p}");
    if t < 0 {
        t += p as i128;
    }
    t as u64
}
