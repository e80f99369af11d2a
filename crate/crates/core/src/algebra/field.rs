//! Scalar field abstraction.
//!
//! Elements carry whatever context they need (a prime, a defining
//! polynomial), so constants are produced from an existing element.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::AlgebraError;

pub trait Field: Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_i64_like(&self, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, AlgebraError>;

    fn is_one(&self) -> bool {
        self.sub(&self.one_like()).is_zero()
    }

    fn div(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(self.mul(&other.inv()?))
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Rough size of the exact representation, used to cap exact work.
    fn height_bits(&self) -> u64 {
        0
    }
}

/// A characteristic-zero field given as Q(t)/(m(t)) with a known power basis.
/// Used to reduce exact data modulo primes.
pub trait ExactField: Field {
    /// Monic minimal polynomial of the generator, constant term first.
    fn generator_minpoly(&self) -> Vec<BigRational>;
    /// Coordinates in the basis 1, t, ..., t^(d-1).
    fn power_coords(&self) -> Vec<BigRational>;
    fn from_rational_like(&self, q: &BigRational) -> Self;
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_bits(q: &BigRational) -> u64 {
    q.numer().bits() + q.denom().bits()
}

impl Field for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self, AlgebraError> {
        if Zero::is_zero(self) {
            Err(AlgebraError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
    fn height_bits(&self) -> u64 {
        rat_bits(self)
    }
}

impl ExactField for BigRational {
    fn generator_minpoly(&self) -> Vec<BigRational> {
        vec![BigRational::zero(), BigRational::one()]
    }
    fn power_coords(&self) -> Vec<BigRational> {
        vec![self.clone()]
    }
    fn from_rational_like(&self, q: &BigRational) -> Self {
        q.clone()
    }
}

/// Render a rational as `n` or `n/d`.
pub fn fmt_rat(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rat_abs(q: &BigRational) -> BigRational {
    q.abs()
}
