//! Simple algebraic number fields Q[t]/(m(t)), m monic irreducible over Q.
//!
//! Irreducibility of the modulus is the caller's responsibility; inversion
//! fails with `DivisionByZero` when it meets a zero divisor.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_rational::BigRational;

use super::field::{fmt_rat, rat_bits, ExactField, Field};
use super::unipoly::UniPoly;
use super::AlgebraError;

#[derive(Debug, PartialEq, Eq)]
pub struct NumberField {
    modulus: UniPoly<BigRational>,
    name: String,
}

impl NumberField {
    /// `modulus` is made monic; degree must be at least 1.
    pub fn new(modulus: UniPoly<BigRational>, name: &str) -> Arc<NumberField> {
        assert!(modulus.degree().unwrap_or(0) >= 1, "modulus must be nonconstant");
        Arc::new(NumberField { modulus: modulus.monic(), name: name.to_string() })
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn modulus(&self) -> &UniPoly<BigRational> {
        &self.modulus
    }
}

#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    coords: UniPoly<BigRational>,
    field: Arc<NumberField>,
}

impl AlgebraicNumber {
    pub fn from_poly(field: &Arc<NumberField>, p: UniPoly<BigRational>) -> Self {
        let coords = p.rem(&field.modulus).expect("nonzero modulus");
        AlgebraicNumber { coords, field: field.clone() }
    }

    pub fn generator(field: &Arc<NumberField>) -> Self {
        AlgebraicNumber::from_poly(field, UniPoly::from_i64s(&[0, 1]))
    }

    pub fn rational(field: &Arc<NumberField>, q: BigRational) -> Self {
        AlgebraicNumber::from_poly(field, UniPoly::constant(q))
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    fn wrap(&self, p: UniPoly<BigRational>) -> Self {
        AlgebraicNumber::from_poly(&self.field, p)
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, o: &Self) -> bool {
        (Arc::ptr_eq(&self.field, &o.field) || self.field == o.field) && self.coords == o.coords
    }
}

impl Eq for AlgebraicNumber {}

impl Hash for AlgebraicNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl Field for AlgebraicNumber {
    fn zero_like(&self) -> Self {
        AlgebraicNumber { coords: UniPoly::zero(), field: self.field.clone() }
    }
    fn one_like(&self) -> Self {
        self.from_i64_like(1)
    }
    fn from_i64_like(&self, n: i64) -> Self {
        self.wrap(UniPoly::from_i64s(&[n]))
    }
    fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        AlgebraicNumber { coords: self.coords.add(&o.coords), field: self.field.clone() }
    }
    fn sub(&self, o: &Self) -> Self {
        AlgebraicNumber { coords: self.coords.sub(&o.coords), field: self.field.clone() }
    }
    fn mul(&self, o: &Self) -> Self {
        self.wrap(self.coords.mul(&o.coords))
    }
    fn neg(&self) -> Self {
        AlgebraicNumber { coords: self.coords.neg(), field: self.field.clone() }
    }
    fn inv(&self) -> Result<Self, AlgebraError> {
        if self.coords.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        // extended Euclid: s*a + u*m = gcd
        let (mut r0, mut r1) = (self.field.modulus.clone(), self.coords.clone());
        let (mut s0, mut s1) = (UniPoly::<BigRational>::zero(), UniPoly::from_i64s(&[1]));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return Err(AlgebraError::DivisionByZero);
        }
        let c = r0.coeffs()[0].inv()?;
        Ok(self.wrap(s0.scale(&c)))
    }
    fn height_bits(&self) -> u64 {
        self.coords.coeffs().iter().map(rat_bits).sum()
    }
}

impl ExactField for AlgebraicNumber {
    fn generator_minpoly(&self) -> Vec<BigRational> {
        self.field.modulus.coeffs().to_vec()
    }
    fn power_coords(&self) -> Vec<BigRational> {
        self.coords.coeffs().to_vec()
    }
    fn from_rational_like(&self, q: &BigRational) -> Self {
        AlgebraicNumber::rational(&self.field, q.clone())
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, c) in self.coords.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = fmt_rat(c);
            parts.push(match i {
                0 => cs,
                1 => format!("({})*{}", cs, self.field.name),
                _ => format!("({})*{}^{}", cs, self.field.name, i),
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two_arithmetic() {
        let k = NumberField::new(UniPoly::from_i64s(&[-2, 0, 1]), "s");
        let s = AlgebraicNumber::generator(&k);
        assert_eq!(s.mul(&s), s.from_i64_like(2));
        let a = s.add(&s.one_like());
        let ai = a.inv().unwrap();
        assert!(a.mul(&ai).is_one());
    }

    #[test]
    fn reducible_modulus_detects_zero_divisor() {
        let k = NumberField::new(UniPoly::from_i64s(&[-1, 0, 1]), "t");
        let t = AlgebraicNumber::generator(&k);
        assert!(t.sub(&t.one_like()).inv().is_err());
    }
}
