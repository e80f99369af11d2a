//! Prime fields F_p for p < 2^62, and reduction of exact fields modulo p.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{ExactField, Field};
use super::unipoly::UniPoly;
use super::AlgebraError;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    pub v: u64,
    pub p: u64,
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

impl Fp {
    pub fn new(v: u64, p: u64) -> Self {
        Fp { v: v % p, p }
    }

    pub fn from_i64(n: i64, p: u64) -> Self {
        Fp { v: (n as i128).rem_euclid(p as i128) as u64, p }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Field for Fp {
    fn zero_like(&self) -> Self {
        Fp { v: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Fp { v: 1, p: self.p }
    }
    fn from_i64_like(&self, n: i64) -> Self {
        let p = self.p as i128;
        Fp { v: (n as i128).rem_euclid(p) as u64, p: self.p }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn is_one(&self) -> bool {
        self.v == 1
    }
    fn add(&self, o: &Self) -> Self {
        let s = self.v + o.v;
        Fp { v: if s >= self.p { s - self.p } else { s }, p: self.p }
    }
    fn sub(&self, o: &Self) -> Self {
        Fp { v: if self.v >= o.v { self.v - o.v } else { self.v + self.p - o.v }, p: self.p }
    }
    fn mul(&self, o: &Self) -> Self {
        Fp { v: mulmod(self.v, o.v, self.p), p: self.p }
    }
    fn neg(&self) -> Self {
        Fp { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }
    fn inv(&self) -> Result<Self, AlgebraError> {
        if self.v == 0 {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Fp { v: powmod(self.v, self.p - 2, self.p), p: self.p })
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below 2^bits in decreasing order.
pub fn primes_below(bits: u32) -> impl Iterator<Item = u64> {
    let mut n = (1u64 << bits) - 1;
    std::iter::from_fn(move || {
        while !is_prime_u64(n) {
            n -= 2;
        }
        let p = n;
        n -= 2;
        Some(p)
    })
}

pub fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

pub fn reduce_rational(q: &BigRational, p: u64) -> Option<Fp> {
    let d = reduce_bigint(q.denom(), p);
    if d == 0 {
        return None;
    }
    let n = reduce_bigint(q.numer(), p);
    Some(Fp::new(mulmod(n, powmod(d, p - 2, p), p), p))
}

/// Roots in F_p of a polynomial, via gcd with x^p - x and random splitting.
pub fn roots_mod_p(f: &UniPoly<Fp>, p: u64, seed: u64) -> Vec<u64> {
    let Some(deg) = f.degree() else { return Vec::new() };
    if deg == 0 {
        return Vec::new();
    }
    let x = UniPoly::new(vec![Fp::new(0, p), Fp::new(1, p)]);
    let xp = x.pow_mod(p as u128, f);
    let g = f.gcd(&xp.sub(&x));
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    split_linear(&g, p, &mut rng, &mut out);
    out.sort_unstable();
    out
}

fn split_linear(g: &UniPoly<Fp>, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<u64>) {
    match g.degree() {
        None | Some(0) => {}
        Some(1) => {
            let m = g.monic();
            out.push(m.coeffs()[0].neg().v);
        }
        Some(_) => loop {
            let a: u64 = rng.gen_range(0..p);
            let shifted = UniPoly::new(vec![Fp::new(a, p), Fp::new(1, p)]);
            let h = shifted.pow_mod(((p - 1) / 2) as u128, g);
            let d = g.gcd(&h.sub(&UniPoly::constant(Fp::new(1, p))));
            let dd = d.degree().unwrap_or(0);
            if dd > 0 && dd < g.degree().unwrap() {
                let rest = g.exact_div(&d).unwrap();
                split_linear(&d, p, rng, out);
                split_linear(&rest, p, rng, out);
                return;
            }
        },
    }
}

/// A prime together with a root of the field's defining polynomial modulo it;
/// this fixes a ring homomorphism from the p-integral elements onto F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModularContext {
    pub p: u64,
    pub root: u64,
}

impl ModularContext {
    /// The `skip`-th usable prime for the field of `sample`.
    pub fn for_field<K: ExactField>(sample: &K, skip: usize) -> ModularContext {
        Self::for_field_below(sample, skip, 62)
    }

    /// As `for_field`, among primes below 2^bits.
    pub fn for_field_below<K: ExactField>(sample: &K, skip: usize, bits: u32) -> ModularContext {
        let m = sample.generator_minpoly();
        let mut found = 0;
        for p in primes_below(bits) {
            let red: Option<Vec<Fp>> = m.iter().map(|c| reduce_rational(c, p)).collect();
            let Some(red) = red else { continue };
            let poly = UniPoly::new(red);
            if poly.degree() != Some(m.len() - 1) {
                continue;
            }
            let roots = roots_mod_p(&poly, p, p ^ 0x5eed);
            if let Some(&r) = roots.first() {
                if found == skip {
                    return ModularContext { p, root: r };
                }
                found += 1;
            }
        }
        unreachable!("infinitely many primes have a root")
    }

    pub fn reduce<K: ExactField>(&self, x: &K) -> Option<Fp> {
        let coords = x.power_coords();
        let r = Fp::new(self.root, self.p);
        let mut acc = Fp::new(0, self.p);
        let mut pw = Fp::new(1, self.p);
        for c in &coords {
            if !c.is_zero() {
                acc = acc.add(&reduce_rational(c, self.p)?.mul(&pw));
            }
            pw = pw.mul(&r);
        }
        Some(acc)
    }

    pub fn one(&self) -> Fp {
        Fp::new(1, self.p)
    }
}

/// Exact integer from its residue, assuming |n| < p/2.
pub fn lift_symmetric(x: Fp) -> i128 {
    if x.v > x.p / 2 {
        x.v as i128 - x.p as i128
    } else {
        x.v as i128
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GaussianRational;

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1_000_000_007 * 3));
        assert!(is_prime_u64((1u64 << 61) - 1));
    }

    #[test]
    fn gaussian_context_has_square_root_of_minus_one() {
        let ctx = ModularContext::for_field(&GaussianRational::zero(), 0);
        assert_eq!(ctx.p % 4, 1);
        let i = Fp::new(ctx.root, ctx.p);
        assert_eq!(i.mul(&i), Fp::from_i64(-1, ctx.p));
        let z = GaussianRational::new(BigRational::from_integer(3.into()), BigRational::from_integer(2.into()));
        let w = z.mul(&z);
        assert_eq!(ctx.reduce(&w).unwrap(), ctx.reduce(&z).unwrap().mul(&ctx.reduce(&z).unwrap()));
    }

    #[test]
    fn roots_of_split_polynomial() {
        let p = 1_000_000_007u64;
        let f = UniPoly::new(vec![Fp::from_i64(6, p), Fp::from_i64(-5, p), Fp::new(1, p)]);
        assert_eq!(roots_mod_p(&f, p, 1), vec![2, 3]);
    }
}
