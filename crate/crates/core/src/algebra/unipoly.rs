//! Dense univariate polynomials, constant term first.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{fmt_rat, Field};
use super::AlgebraError;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniPoly<K> {
    coeffs: Vec<K>,
}

impl<K: Field> UniPoly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: K) -> Self {
        UniPoly::new(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: K, k: usize) -> Self {
        let mut v = vec![c.zero_like(); k + 1];
        v[k] = c;
        UniPoly::new(v)
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<K> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&K> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&K> {
        self.coeffs.get(i)
    }

    /// Lowest power of t with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(match (self.coeffs.get(i), o.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        UniPoly::new(v)
    }

    pub fn neg(&self) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let z = self.coeffs[0].zero_like();
        let mut v = vec![z; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = v[i + j].add(&a.mul(b));
                }
            }
        }
        UniPoly::new(v)
    }

    pub fn pow(&self, e: u32) -> Self {
        // the zero polynomial stays zero, including for e = 0
        let mut acc = match self.coeffs.first() {
            Some(c) => UniPoly::constant(c.one_like()),
            None => return UniPoly::zero(),
        };
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiply by t^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let z = self.coeffs[0].zero_like();
        let mut v = vec![z; k];
        v.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs: v }
    }

    /// Divide by t^k, dropping lower terms.
    pub fn unshift(&self, k: usize) -> Self {
        UniPoly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn eval(&self, x: &K) -> K {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&c.from_i64_like(i as i64)))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => UniPoly::zero(),
            Some(l) => {
                let li = l.inv().expect("nonzero leading coefficient");
                self.scale(&li)
            }
        }
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), AlgebraError> {
        let dd = d.degree().ok_or(AlgebraError::DivisionByZero)?;
        let lci = d.lc().unwrap().inv()?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let z = lci.zero_like();
        let mut q = vec![z; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].mul(&lci);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].sub(&c.mul(dc));
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((UniPoly::new(q), UniPoly::new(r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self, AlgebraError> {
        Ok(self.div_rem(d)?.1)
    }

    pub fn exact_div(&self, d: &Self) -> Result<Self, AlgebraError> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(AlgebraError::InexactDivision)
        }
    }

    /// Monic gcd; zero only if both inputs are zero.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`
    pub fn pow_mod(&self, mut e: u128, m: &Self) -> Self {
        let one = UniPoly::constant(m.lc().expect("nonzero modulus").one_like());
        let mut base = self.rem(m).unwrap();
        let mut acc = one.rem(m).unwrap();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m).unwrap();
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m).unwrap();
            }
        }
        acc
    }

    /// `p / gcd(p, p')`
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        self.exact_div(&g).expect("gcd divides")
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> UniPoly<L> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }
}

impl UniPoly<BigRational> {
    pub fn from_i64s(c: &[i64]) -> Self {
        UniPoly::new(c.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
    }

    pub fn from_bigints(c: &[BigInt]) -> Self {
        UniPoly::new(c.iter().map(|x| BigRational::from_integer(x.clone())).collect())
    }

    /// Integer coefficients if every coefficient is integral.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| if c.denom().is_one() { Some(c.numer().clone()) } else { None })
            .collect()
    }

    pub fn x() -> Self {
        UniPoly::from_i64s(&[0, 1])
    }

    /// `x^n`
    pub fn x_pow(n: usize) -> Self {
        UniPoly::monomial(BigRational::one(), n)
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(Field::is_one)
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&BigRational::from_integer(BigInt::from(x)))
    }
}

impl fmt::Display for UniPoly<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if Field::is_zero(c) {
                continue;
            }
            let neg = c < &BigRational::zero();
            let a = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = i == 0 || !Field::is_one(&a);
            if show_coeff {
                write!(f, "{}", fmt_rat(&a))?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{}", i)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = UniPoly<BigRational>;

    #[test]
    fn div_rem_reconstructs() {
        let a = Q::from_i64s(&[1, 0, -3, 2, 5]);
        let b = Q::from_i64s(&[2, 1, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn gcd_of_products() {
        let f = Q::from_i64s(&[-1, 1]);
        let a = f.mul(&Q::from_i64s(&[1, 1]));
        let b = f.mul(&Q::from_i64s(&[2, 0, 1]));
        assert_eq!(a.gcd(&b), f);
    }

    #[test]
    fn squarefree_removes_repeats() {
        let p = Q::from_i64s(&[-1, 1]).pow(2).mul(&Q::from_i64s(&[1, 1]));
        assert_eq!(p.squarefree_part().monic(), Q::from_i64s(&[-1, 0, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(Q::from_i64s(&[-1, -1, 1]).to_string(), "x^2 - x - 1");
        assert_eq!(Q::from_i64s(&[-1, 0, 0, 0, 0, 1]).to_string(), "x^5 - 1");
    }
}
