//! Sparse homogeneous polynomials in x0, x1, x2.

use std::collections::BTreeMap;
use std::fmt;

use super::bipoly::BiPoly;
use super::field::{ExactField, Field};
use super::modp::{Fp, ModularContext};
use super::unipoly::UniPoly;
use super::AlgebraError;

pub type Exps = [u32; 3];

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HomogeneousPoly3<K> {
    degree: u32,
    terms: BTreeMap<Exps, K>,
}

impl<K: Field> HomogeneousPoly3<K> {
    /// The zero polynomial, tagged with a nominal degree.
    pub fn zero(degree: u32) -> Self {
        HomogeneousPoly3 { degree, terms: BTreeMap::new() }
    }

    pub fn from_terms(degree: u32, it: impl IntoIterator<Item = (Exps, K)>) -> Result<Self, AlgebraError> {
        let mut p = HomogeneousPoly3::zero(degree);
        for (e, c) in it {
            if e[0] + e[1] + e[2] != degree {
                return Err(AlgebraError::DegreeMismatch);
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// `c0 x0 + c1 x1 + c2 x2`
    pub fn linear(c: &[K; 3]) -> Self {
        let mut p = HomogeneousPoly3::zero(1);
        p.add_term([1, 0, 0], c[0].clone());
        p.add_term([0, 1, 0], c[1].clone());
        p.add_term([0, 0, 1], c[2].clone());
        p
    }

    /// The coordinate x_i.
    pub fn var(i: usize, one: &K) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        let mut p = HomogeneousPoly3::zero(1);
        p.add_term(e, one.one_like());
        p
    }

    pub fn constant(c: K) -> Self {
        let mut p = HomogeneousPoly3::zero(0);
        p.add_term([0, 0, 0], c);
        p
    }

    fn add_term(&mut self, e: Exps, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.add(&c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &K)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: Exps) -> Option<&K> {
        self.terms.get(&e)
    }

    pub fn any_coeff(&self) -> Option<&K> {
        self.terms.values().next()
    }

    pub fn is_constant(&self) -> bool {
        self.degree == 0 || self.is_zero()
    }

    pub fn add(&self, o: &Self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Ok(o.clone());
        }
        if o.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != o.degree {
            return Err(AlgebraError::DegreeMismatch);
        }
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        Ok(r)
    }

    pub fn neg(&self) -> Self {
        HomogeneousPoly3 { degree: self.degree, terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return HomogeneousPoly3::zero(self.degree);
        }
        HomogeneousPoly3 { degree: self.degree, terms: self.terms.iter().map(|(e, v)| (*e, v.mul(c))).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = HomogeneousPoly3::zero(self.degree + o.degree);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                r.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], x.mul(y));
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> Self {
        let Some(c) = self.any_coeff() else { return HomogeneousPoly3::zero(self.degree * e) };
        let mut acc = HomogeneousPoly3::constant(c.one_like());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, pt: &[K; 3]) -> K {
        let mut acc = pt[0].zero_like();
        for (e, c) in &self.terms {
            let m = pt[0].pow(e[0] as u64).mul(&pt[1].pow(e[1] as u64)).mul(&pt[2].pow(e[2] as u64));
            acc = acc.add(&c.mul(&m));
        }
        acc
    }

    /// Substitute `g[i]` for x_i; all `g[i]` share one degree.
    pub fn compose(&self, g: &[HomogeneousPoly3<K>; 3]) -> Self {
        let d = g.iter().map(|p| p.degree).max().unwrap_or(0);
        let Some(one) = self.any_coeff().map(|c| c.one_like()) else { return HomogeneousPoly3::zero(self.degree * d) };
        let mut pows: Vec<Vec<HomogeneousPoly3<K>>> = Vec::new();
        for gi in g {
            let mut v = vec![HomogeneousPoly3::constant(one.clone())];
            for k in 1..=self.degree as usize {
                v.push(v[k - 1].mul(gi));
            }
            pows.push(v);
        }
        let mut r = HomogeneousPoly3::zero(self.degree * d);
        for (e, c) in &self.terms {
            let m = pows[0][e[0] as usize].mul(&pows[1][e[1] as usize]).mul(&pows[2][e[2] as usize]);
            for (me, mc) in m.terms {
                r.add_term(me, mc.mul(c));
            }
        }
        r
    }

    /// Largest power of x0 dividing the polynomial.
    pub fn x0_valuation(&self) -> u32 {
        self.terms.keys().map(|e| e[0]).min().unwrap_or(0)
    }

    /// Set x0 = 1.
    pub fn dehomogenize(&self) -> BiPoly<K> {
        BiPoly::from_terms(self.terms.iter().map(|(e, c)| ((e[1], e[2]), c.clone())))
    }

    /// Homogenize to the given degree (at least the total degree of `p`).
    pub fn homogenize(p: &BiPoly<K>, degree: u32) -> Self {
        let mut r = HomogeneousPoly3::zero(degree);
        for ((i, j), c) in p.terms() {
            r.add_term([degree - i - j, *i, *j], c.clone());
        }
        r
    }

    /// Lexicographically first term (largest exponent of x0, then x1).
    pub fn lex_leading(&self) -> Option<(Exps, &K)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    pub fn normalized(&self) -> Self {
        match self.lex_leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
        }
    }

    pub fn exact_div(&self, q: &Self) -> Result<Self, AlgebraError> {
        if q.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if q.degree > self.degree && !self.is_zero() {
            return Err(AlgebraError::InexactDivision);
        }
        let d = self.degree.saturating_sub(q.degree);
        if self.is_zero() {
            return Ok(HomogeneousPoly3::zero(d));
        }
        let vq = q.x0_valuation();
        let vp = self.x0_valuation();
        if vp < vq {
            return Err(AlgebraError::InexactDivision);
        }
        let a = self.dehomogenize();
        let b = q.dehomogenize();
        let c = a.exact_div(&b)?;
        if c.total_degree().unwrap_or(0) > d {
            return Err(AlgebraError::InexactDivision);
        }
        let r = HomogeneousPoly3::homogenize(&c, d);
        if r.mul(q) != *self {
            return Err(AlgebraError::InexactDivision);
        }
        Ok(r)
    }

    /// Normalized gcd by dehomogenization and a primitive PRS.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.normalized();
        }
        if o.is_zero() {
            return self.normalized();
        }
        let v = self.x0_valuation().min(o.x0_valuation());
        let g = self.dehomogenize().gcd(&o.dehomogenize());
        let gd = g.total_degree().unwrap_or(0);
        let mut h = HomogeneousPoly3::homogenize(&g, gd);
        if v > 0 {
            let mut x0v = HomogeneousPoly3::zero(v);
            x0v.add_term([v, 0, 0], h.any_coeff().unwrap().one_like());
            h = h.mul(&x0v);
        }
        h.normalized()
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> HomogeneousPoly3<L> {
        let mut r = HomogeneousPoly3::zero(self.degree);
        for (e, c) in &self.terms {
            r.add_term(*e, f(c));
        }
        r
    }

    pub fn try_map<L: Field>(&self, f: impl Fn(&K) -> Option<L>) -> Option<HomogeneousPoly3<L>> {
        let mut r = HomogeneousPoly3::zero(self.degree);
        for (e, c) in &self.terms {
            r.add_term(*e, f(c)?);
        }
        Some(r)
    }

    /// Evaluate along `base + t*dir` without stripping.
    pub fn on_line(&self, base: &[K; 3], dir: &[K; 3]) -> UniPoly<K> {
        let lin: Vec<UniPoly<K>> = (0..3).map(|i| UniPoly::new(vec![base[i].clone(), dir[i].clone()])).collect();
        let one = base[0].one_like();
        let mut pows: Vec<Vec<UniPoly<K>>> = Vec::new();
        for l in &lin {
            let mut v = vec![UniPoly::constant(one.clone())];
            for k in 1..=self.degree as usize {
                v.push(v[k - 1].mul(l));
            }
            pows.push(v);
        }
        let mut acc = UniPoly::zero();
        for (e, c) in &self.terms {
            let m = pows[0][e[0] as usize].mul(&pows[1][e[1] as usize]).mul(&pows[2][e[2] as usize]);
            acc = acc.add(&m.scale(c));
        }
        acc
    }
}

impl<K: ExactField> HomogeneousPoly3<K> {
    pub fn reduce(&self, ctx: &ModularContext) -> Option<HomogeneousPoly3<Fp>> {
        self.try_map(|c| ctx.reduce(c))
    }

    /// True only when coprimality is certified by a reduction mod p: a common
    /// factor over K would survive as a nonconstant common factor mod p.
    pub fn certainly_coprime(&self, o: &Self, ctx: &ModularContext) -> bool {
        let (Some(a), Some(b)) = (self.reduce(ctx), o.reduce(ctx)) else { return false };
        if a.is_zero() || b.is_zero() {
            return false;
        }
        a.gcd(&b).is_constant()
    }

    /// gcd with a modular coprimality shortcut.
    pub fn gcd_exact(&self, o: &Self, ctx: &ModularContext) -> Self {
        if !self.is_zero() && !o.is_zero() && self.certainly_coprime(o, ctx) {
            return HomogeneousPoly3::constant(self.any_coeff().unwrap().one_like());
        }
        self.gcd(o)
    }
}

/// A map's components evaluated along a line, with the common t-power stripped.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TCurve<K> {
    pub entries: [UniPoly<K>; 3],
    pub stripped: usize,
}

impl<K: Field> TCurve<K> {
    /// Coefficient vector of t^j.
    pub fn coeff_vector(&self, j: usize) -> [K; 3] {
        let z = self.entries.iter().find_map(|e| e.lc()).expect("nonzero curve").zero_like();
        std::array::from_fn(|i| self.entries[i].coeff(j).cloned().unwrap_or_else(|| z.clone()))
    }

    pub fn max_degree(&self) -> usize {
        self.entries.iter().filter_map(|e| e.degree()).max().unwrap_or(0)
    }

    /// Multiply back by t^k.
    pub fn unstripped(&self) -> [UniPoly<K>; 3] {
        std::array::from_fn(|i| self.entries[i].shift(self.stripped))
    }
}

pub fn restrict_to_line<K: Field>(
    components: &[HomogeneousPoly3<K>; 3],
    base: &[K; 3],
    dir: &[K; 3],
) -> Result<TCurve<K>, AlgebraError> {
    let raw: [UniPoly<K>; 3] = std::array::from_fn(|i| components[i].on_line(base, dir));
    let k = raw.iter().filter_map(|e| e.valuation()).min().ok_or(AlgebraError::IdenticallyZero)?;
    Ok(TCurve { entries: std::array::from_fn(|i| raw[i].unshift(k)), stripped: k })
}

impl<K: Field> fmt::Display for HomogeneousPoly3<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{}", i)?,
                    _ => write!(f, "*x{}^{}", i, k)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GaussianRational as G;

    fn lin(a: i64, b: i64, c: i64) -> HomogeneousPoly3<G> {
        HomogeneousPoly3::linear(&[G::from_int(a), G::from_int(b), G::from_int(c)])
    }

    #[test]
    fn multiply_and_divide_by_x0() {
        let x0 = lin(1, 0, 0);
        let p = x0.mul(&lin(0, 1, 1));
        let q = p.mul(&x0);
        let expect =
            HomogeneousPoly3::from_terms(3, [([2, 1, 0], G::one()), ([2, 0, 1], G::one())]).unwrap();
        assert_eq!(q, expect);
        assert_eq!(q.exact_div(&x0).unwrap(), p);
        assert_eq!(lin(0, 1, 1).exact_div(&lin(1, 0, 0)), Err(AlgebraError::InexactDivision));
    }

    #[test]
    fn add_requires_equal_degrees() {
        assert_eq!(lin(1, 0, 0).add(&lin(1, 0, 0).mul(&lin(0, 1, 0))), Err(AlgebraError::DegreeMismatch));
    }

    #[test]
    fn gcd_of_x0_multiples() {
        let x0 = lin(1, 0, 0);
        let a = x0.mul(&lin(1, 2, 3));
        let b = x0.mul(&lin(0, 1, -1));
        assert_eq!(a.gcd(&b), x0);
        assert_eq!(a.gcd(&HomogeneousPoly3::zero(2)), a.normalized());
    }

    #[test]
    fn gcd_modular_shortcut_agrees() {
        let ctx = ModularContext::for_field(&G::zero(), 0);
        let a = lin(1, 2, 3).mul(&lin(2, 0, 1));
        let b = lin(0, 1, 1).mul(&lin(1, 1, 1));
        assert!(a.certainly_coprime(&b, &ctx));
        assert!(a.gcd(&b).is_constant());
        let c = lin(1, 2, 3).mul(&lin(0, 1, 1));
        assert!(!a.certainly_coprime(&c, &ctx));
        assert_eq!(a.gcd_exact(&c, &ctx), lin(1, 2, 3).normalized());
    }

    #[test]
    fn identity_restricted_to_line() {
        let one = G::one();
        let comps = [HomogeneousPoly3::var(0, &one), HomogeneousPoly3::var(1, &one), HomogeneousPoly3::var(2, &one)];
        let base = [G::from_int(1), G::from_int(2), G::from_int(3)];
        let dir = [G::from_int(0), G::from_int(1), G::from_int(5)];
        let c = restrict_to_line(&comps, &base, &dir).unwrap();
        assert_eq!(c.stripped, 0);
        assert_eq!(c.coeff_vector(0), base);
        assert_eq!(c.coeff_vector(1), dir);
    }

    #[test]
    fn first_component_at_point() {
        // x0 * (gamma . x) with gamma = (0, 1, 0)
        let f1 = lin(1, 0, 0).mul(&lin(0, 1, 0));
        assert_eq!(f1.eval(&[G::from_int(1), G::from_int(2), G::from_int(3)]), G::from_int(2));
    }
}
