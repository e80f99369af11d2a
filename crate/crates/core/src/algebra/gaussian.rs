//! Gaussian rationals `a + b i` with `a, b` in Q.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{fmt_rat, rat_bits, ExactField, Field};
use super::AlgebraError;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        GaussianRational::new(BigRational::new(BigInt::from(n), BigInt::from(d)), BigRational::zero())
    }

    pub fn real(q: BigRational) -> Self {
        GaussianRational::new(q, BigRational::zero())
    }

    pub fn i() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::one())
    }

    pub fn zero() -> Self {
        GaussianRational::from_int(0)
    }

    pub fn one() -> Self {
        GaussianRational::from_int(1)
    }

    pub fn is_real(&self) -> bool {
        Zero::is_zero(&self.im)
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -&self.im)
    }

    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl Field for GaussianRational {
    fn zero_like(&self) -> Self {
        GaussianRational::zero()
    }
    fn one_like(&self) -> Self {
        GaussianRational::one()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        GaussianRational::from_int(n)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn is_one(&self) -> bool {
        One::is_one(&self.re) && Zero::is_zero(&self.im)
    }
    fn add(&self, o: &Self) -> Self {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
    fn sub(&self, o: &Self) -> Self {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
    fn mul(&self, o: &Self) -> Self {
        if Zero::is_zero(&self.im) && Zero::is_zero(&o.im) {
            return GaussianRational::real(&self.re * &o.re);
        }
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
    fn neg(&self) -> Self {
        GaussianRational::new(-&self.re, -&self.im)
    }
    fn inv(&self) -> Result<Self, AlgebraError> {
        if Field::is_zero(self) {
            return Err(AlgebraError::DivisionByZero);
        }
        if Zero::is_zero(&self.im) {
            return Ok(GaussianRational::real(self.re.recip()));
        }
        let n = self.norm();
        Ok(GaussianRational::new(&self.re / &n, -&self.im / &n))
    }
    fn height_bits(&self) -> u64 {
        rat_bits(&self.re) + rat_bits(&self.im)
    }
}

impl ExactField for GaussianRational {
    fn generator_minpoly(&self) -> Vec<BigRational> {
        vec![BigRational::one(), BigRational::zero(), BigRational::one()]
    }
    fn power_coords(&self) -> Vec<BigRational> {
        vec![self.re.clone(), self.im.clone()]
    }
    fn from_rational_like(&self, q: &BigRational) -> Self {
        GaussianRational::real(q.clone())
    }
}

/// Renders in the parameter-file literal grammar: `3`, `-1/2`, `2i`, `1/2+1i`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.im) {
            return write!(f, "{}", fmt_rat(&self.re));
        }
        if Zero::is_zero(&self.re) {
            return write!(f, "{}i", fmt_rat(&self.im));
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(f, "{}{}{}i", fmt_rat(&self.re), sign, fmt_rat(&self.im.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: (i64, i64), b: (i64, i64)) -> GaussianRational {
        GaussianRational::new(
            BigRational::new(a.0.into(), a.1.into()),
            BigRational::new(b.0.into(), b.1.into()),
        )
    }

    #[test]
    fn modulus_identity() {
        let z = g((1, 2), (1, 1));
        let w = g((1, 2), (-1, 1));
        assert_eq!(z.mul(&w), GaussianRational::from_ratio(5, 4));
    }

    #[test]
    fn inverse_of_two() {
        assert_eq!(GaussianRational::from_int(2).inv().unwrap(), GaussianRational::from_ratio(1, 2));
    }

    #[test]
    fn normalized_equality() {
        assert_eq!(GaussianRational::from_ratio(3, 6), GaussianRational::from_ratio(1, 2));
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(GaussianRational::zero().inv(), Err(AlgebraError::DivisionByZero));
        assert!(GaussianRational::one().div(&GaussianRational::zero()).is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(g((1, 2), (1, 1)).to_string(), "1/2+1i");
        assert_eq!(g((0, 1), (-3, 1)).to_string(), "-3i");
        assert_eq!(g((-2, 1), (-1, 3)).to_string(), "-2-1/3i");
        assert_eq!(GaussianRational::zero().to_string(), "0");
    }

    #[test]
    fn i_squared() {
        let i = GaussianRational::i();
        assert_eq!(i.mul(&i), GaussianRational::from_int(-1));
        assert_eq!(i.pow(4), GaussianRational::one());
    }
}
