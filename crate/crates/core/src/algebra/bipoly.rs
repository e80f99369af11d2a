//! Sparse bivariate polynomials in (x, y), with gcd over K[y][x].

use std::collections::BTreeMap;
use std::fmt;

use super::field::Field;
use super::unipoly::UniPoly;
use super::AlgebraError;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BiPoly<K> {
    terms: BTreeMap<(u32, u32), K>,
}

impl<K: Field> Default for BiPoly<K> {
    fn default() -> Self {
        BiPoly::zero()
    }
}

impl<K: Field> BiPoly<K> {
    pub fn zero() -> Self {
        BiPoly { terms: BTreeMap::new() }
    }

    pub fn from_terms(it: impl IntoIterator<Item = ((u32, u32), K)>) -> Self {
        let mut p = BiPoly::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn constant(c: K) -> Self {
        BiPoly::from_terms([((0, 0), c)])
    }

    pub fn x(one: &K) -> Self {
        BiPoly::from_terms([((1, 0), one.one_like())])
    }

    pub fn y(one: &K) -> Self {
        BiPoly::from_terms([((0, 1), one.one_like())])
    }

    /// `c0 + c1 x + c2 y`
    pub fn affine(c: &[K; 3]) -> Self {
        BiPoly::from_terms([((0, 0), c[0].clone()), ((1, 0), c[1].clone()), ((0, 1), c[2].clone())])
    }

    pub fn add_term(&mut self, e: (u32, u32), c: K) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &K)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Option<&K> {
        self.terms.get(&(i, j))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn any_coeff(&self) -> Option<&K> {
        self.terms.values().next()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == (0, 0))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        BiPoly { terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly { terms: self.terms.iter().map(|(e, v)| (*e, v.mul(c))).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = BiPoly::zero();
        for ((i, j), a) in &self.terms {
            for ((k, l), b) in &o.terms {
                r.add_term((i + k, j + l), a.mul(b));
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> Self {
        let Some(c) = self.any_coeff() else { return BiPoly::zero() };
        let mut acc = BiPoly::constant(c.one_like());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &K, y: &K) -> K {
        let mut acc = x.zero_like();
        for ((i, j), c) in &self.terms {
            acc = acc.add(&c.mul(&x.pow(*i as u64)).mul(&y.pow(*j as u64)));
        }
        acc
    }

    /// Substitute polynomials for x and y.
    pub fn compose(&self, xs: &BiPoly<K>, ys: &BiPoly<K>) -> BiPoly<K> {
        let Some(c) = self.any_coeff() else { return BiPoly::zero() };
        let one = BiPoly::constant(c.one_like());
        let dx = self.degree_x().unwrap_or(0) as usize;
        let dy = self.degree_y().unwrap_or(0) as usize;
        let mut xp = vec![one.clone()];
        for k in 1..=dx {
            xp.push(xp[k - 1].mul(xs));
        }
        let mut yp = vec![one];
        for k in 1..=dy {
            yp.push(yp[k - 1].mul(ys));
        }
        let mut r = BiPoly::zero();
        for ((i, j), c) in &self.terms {
            r = r.add(&xp[*i as usize].mul(&yp[*j as usize]).scale(c));
        }
        r
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> BiPoly<L> {
        BiPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    pub fn try_map<L: Field>(&self, f: impl Fn(&K) -> Option<L>) -> Option<BiPoly<L>> {
        let mut r = BiPoly::zero();
        for (e, c) in &self.terms {
            r.add_term(*e, f(c)?);
        }
        Some(r)
    }

    /// Leading term in lexicographic order (x before y).
    pub fn lex_leading(&self) -> Option<((u32, u32), &K)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    /// Scaled so the lexicographically leading coefficient is 1.
    pub fn normalized(&self) -> Self {
        match self.lex_leading() {
            None => BiPoly::zero(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
        }
    }

    fn to_dense(&self) -> Vec<UniPoly<K>> {
        let Some(dx) = self.degree_x() else { return Vec::new() };
        let mut cols: Vec<Vec<(u32, K)>> = vec![Vec::new(); dx as usize + 1];
        for ((i, j), c) in &self.terms {
            cols[*i as usize].push((*j, c.clone()));
        }
        let z = self.any_coeff().unwrap().zero_like();
        cols.into_iter()
            .map(|col| {
                let dy = col.iter().map(|(j, _)| *j).max().map_or(0, |d| d as usize + 1);
                let mut v = vec![z.clone(); dy];
                for (j, c) in col {
                    v[j as usize] = c;
                }
                UniPoly::new(v)
            })
            .collect()
    }

    fn from_dense(d: &[UniPoly<K>]) -> Self {
        let mut r = BiPoly::zero();
        for (i, col) in d.iter().enumerate() {
            for (j, c) in col.coeffs().iter().enumerate() {
                r.add_term((i as u32, j as u32), c.clone());
            }
        }
        r
    }

    /// Exact quotient; errors if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Result<Self, AlgebraError> {
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(BiPoly::zero());
        }
        let dd = d.to_dense();
        let mut p = trim(self.to_dense());
        let ddeg = dd.len() - 1;
        let lcd = dd[ddeg].clone();
        let mut q: Vec<UniPoly<K>> = Vec::new();
        while !p.is_empty() && p.len() > ddeg {
            let k = p.len() - 1 - ddeg;
            let c = p.last().unwrap().exact_div(&lcd)?;
            if q.len() <= k {
                q.resize(k + 1, UniPoly::zero());
            }
            q[k] = c.clone();
            for (j, dc) in dd.iter().enumerate() {
                p[k + j] = p[k + j].sub(&c.mul(dc));
            }
            p = trim(p);
        }
        if !p.is_empty() {
            return Err(AlgebraError::InexactDivision);
        }
        Ok(BiPoly::from_dense(&q))
    }

    /// Greatest common divisor, lexicographically normalized; gcd(0, 0) = 0.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.normalized();
        }
        if o.is_zero() {
            return self.normalized();
        }
        let a = self.to_dense();
        let b = o.to_dense();
        let ca = content(&a);
        let cb = content(&b);
        let c = ca.gcd(&cb);
        let mut a = primitive(&a, &ca);
        let mut b = primitive(&b, &cb);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = pseudo_rem(&a, &b);
            a = b;
            b = if r.is_empty() {
                r
            } else {
                let cr = content(&r);
                primitive(&r, &cr)
            };
        }
        // a is the last nonzero remainder; degree 0 in x means the primitive gcd is 1
        let g = if a.len() <= 1 { vec![UniPoly::constant(c.lc().unwrap().one_like())] } else { a };
        let g: Vec<UniPoly<K>> = g.iter().map(|p| p.mul(&c)).collect();
        BiPoly::from_dense(&g).normalized()
    }
}

fn trim<K: Field>(mut v: Vec<UniPoly<K>>) -> Vec<UniPoly<K>> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn content<K: Field>(a: &[UniPoly<K>]) -> UniPoly<K> {
    let mut g = UniPoly::zero();
    for c in a {
        g = g.gcd(c);
        if g.degree() == Some(0) {
            break;
        }
    }
    g
}

fn primitive<K: Field>(a: &[UniPoly<K>], c: &UniPoly<K>) -> Vec<UniPoly<K>> {
    if c.degree() == Some(0) {
        let ci = c.coeffs()[0].inv().unwrap();
        return a.iter().map(|p| p.scale(&ci)).collect();
    }
    a.iter().map(|p| p.exact_div(c).expect("content divides")).collect()
}

/// lc(b)^k * a mod b in K[y][x], with the power absorbed step by step.
fn pseudo_rem<K: Field>(a: &[UniPoly<K>], b: &[UniPoly<K>]) -> Vec<UniPoly<K>> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let k = r.len() - 1 - db;
        let lr = r.last().unwrap().clone();
        let mut next: Vec<UniPoly<K>> = r.iter().map(|c| c.mul(lb)).collect();
        for (j, bc) in b.iter().enumerate() {
            next[k + j] = next[k + j].sub(&lr.mul(bc));
        }
        r = trim(next);
    }
    r
}

/// Terms in descending order, e.g. `2*x^2*y + -1/2*y + 3`.
impl<K: Field> fmt::Display for BiPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&(i, j), c)| {
                let mut vars = Vec::new();
                for (name, e) in [("x", i), ("y", j)] {
                    match e {
                        0 => {}
                        1 => vars.push(name.to_string()),
                        _ => vars.push(format!("{}^{}", name, e)),
                    }
                }
                let cs = c.to_string();
                let cs = if cs[1..].contains(['+', '-']) { format!("({})", cs) } else { cs };
                match (vars.is_empty(), c.is_one()) {
                    (true, _) => cs,
                    (false, true) => vars.join("*"),
                    (false, false) => format!("{}*{}", cs, vars.join("*")),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
