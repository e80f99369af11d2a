//! Invariant fibrations V∘f = λV or V∘f = a + bV, and first integrals built
//! from them.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{BiPoly, Field, GaussianRational};
use crate::map::{build_map, MapError, MapParams, QuadraticMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FibrationError {
    #[error("V∘f is undefined")]
    UndefinedComposition,
    #[error("V is constant")]
    ConstantFunction,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("not equivariant; identity fails at ({x}, {y})")]
    NotEquivariant { x: String, y: String },
    #[error("multiplier is not a root of unity of the requested order")]
    NotRootOfUnity,
    #[error("invalid multiplier for an affine first integral")]
    InvalidMultiplier,
    #[error("invalid family parameters: {0}")]
    InvalidFamilyParams(String),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// num/den in the affine variables x, y, reduced by their gcd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction2<K> {
    pub num: BiPoly<K>,
    pub den: BiPoly<K>,
}

impl<K: Field> RationalFunction2<K> {
    pub fn new(num: BiPoly<K>, den: BiPoly<K>) -> Result<Self, FibrationError> {
        if den.is_zero() {
            return Err(FibrationError::ZeroDenominator);
        }
        if num.is_zero() {
            let one = den.any_coeff().unwrap().one_like();
            return Ok(RationalFunction2 { num, den: BiPoly::constant(one) });
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        // make the denominator's leading coefficient 1
        let lc = den.lex_leading().map(|(_, c)| c.clone()).unwrap();
        let inv = lc.inv().expect("nonzero");
        Ok(RationalFunction2 { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn polynomial(p: BiPoly<K>, one: &K) -> Self {
        RationalFunction2 { num: p, den: BiPoly::constant(one.one_like()) }
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant(c: K) -> Self {
        let one = c.one_like();
        RationalFunction2 { num: BiPoly::constant(c), den: BiPoly::constant(one) }
    }

    pub fn add(&self, o: &Self) -> Self {
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        RationalFunction2::new(num, self.den.mul(&o.den)).expect("nonzero denominators")
    }

    pub fn neg(&self) -> Self {
        let m1 = self.den.any_coeff().unwrap().one_like().neg();
        RationalFunction2 { num: self.num.scale(&m1), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn div(&self, o: &Self) -> Result<Self, FibrationError> {
        RationalFunction2::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn mul(&self, o: &Self) -> Self {
        RationalFunction2::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero denominators")
    }

    pub fn pow(&self, n: u32) -> Self {
        let one = self.den.any_coeff().unwrap().one_like();
        (0..n).fold(RationalFunction2::polynomial(BiPoly::constant(one.clone()), &one), |acc, _| acc.mul(self))
    }

    /// a + b·self
    pub fn affine_image(&self, a: &K, b: &K) -> Self {
        let num = self.den.scale(a).add(&self.num.scale(b));
        RationalFunction2::new(num, self.den.clone()).expect("nonzero denominator")
    }

    pub fn eval(&self, x: &K, y: &K) -> Option<K> {
        self.num.eval(x, y).div(&self.den.eval(x, y)).ok()
    }

    /// V∘f with f = (α·(1,x,y), (β·(1,x,y))/(γ·(1,x,y))).
    pub fn compose_with(&self, map: &QuadraticMap<K>) -> Result<Self, FibrationError> {
        let (num, den) = compose_parts(self, map);
        if den.is_zero() {
            return Err(FibrationError::UndefinedComposition);
        }
        RationalFunction2::new(num, den)
    }
}

impl<K: Field> std::fmt::Display for RationalFunction2<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den.is_constant() && self.den.coeff(0, 0).is_some_and(|c| c.is_one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Numerator and denominator of V∘f before reduction.
fn compose_parts<K: Field>(v: &RationalFunction2<K>, map: &QuadraticMap<K>) -> (BiPoly<K>, BiPoly<K>) {
    let p = &map.params;
    let fx = BiPoly::affine(&p.alpha);
    let n = BiPoly::affine(&p.beta);
    let d = BiPoly::affine(&p.gamma);
    let m = v.num.degree_y().unwrap_or(0).max(v.den.degree_y().unwrap_or(0));
    let sub = |q: &BiPoly<K>| {
        let mut acc = BiPoly::zero();
        for (&(i, j), c) in q.terms() {
            let t = fx.pow(i).mul(&n.pow(j)).mul(&d.pow(m - j)).scale(c);
            acc = acc.add(&t);
        }
        acc
    };
    (sub(&v.num), sub(&v.den))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivariance<K> {
    Multiplicative { lambda: K },
    Affine { a: K, b: K },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FibrationMode {
    Multiplicative,
    Affine,
}

/// Small integer points where both sides are defined, for failure witnesses.
fn witness<K: Field>(one: &K, lhs: &BiPoly<K>, rhs: &BiPoly<K>, guards: &[&BiPoly<K>]) -> Option<(K, K)> {
    for s in 1..12i64 {
        for (a, b) in [(s, s + 1), (-s, s + 2), (s + 3, -s), (2 * s + 1, 3 * s - 1)] {
            let (x, y) = (one.from_i64_like(a), one.from_i64_like(b));
            if guards.iter().any(|g| g.eval(&x, &y).is_zero()) {
                continue;
            }
            if lhs.eval(&x, &y) != rhs.eval(&x, &y) {
                return Some((x, y));
            }
        }
    }
    None
}

fn fail<K: Field>(one: &K, lhs: &BiPoly<K>, rhs: &BiPoly<K>, guards: &[&BiPoly<K>]) -> FibrationError {
    let (x, y) = witness(one, lhs, rhs, guards).unwrap_or_else(|| (one.zero_like(), one.zero_like()));
    FibrationError::NotEquivariant { x: x.to_string(), y: y.to_string() }
}

/// Solve V∘f = λV (or a + bV) by coefficient comparison of the cross-multiplied
/// identity, then confirm it on every coefficient.
pub fn verify_eigen_fibration<K: Field>(
    map: &QuadraticMap<K>,
    v: &RationalFunction2<K>,
    mode: FibrationMode,
) -> Result<Equivariance<K>, FibrationError> {
    if v.is_constant() {
        return Err(FibrationError::ConstantFunction);
    }
    let one = map.unit();
    let (pn, pd) = compose_parts(v, map);
    if pd.is_zero() {
        return Err(FibrationError::UndefinedComposition);
    }
    // V∘f = pn/pd, V = P/Q
    let lhs = pn.mul(&v.den);
    let u = v.num.mul(&pd);
    let w = v.den.mul(&pd);
    let guards = [&pd, &v.den];
    match mode {
        FibrationMode::Multiplicative => {
            let lambda = u
                .terms()
                .next()
                .map(|(&(i, j), c)| lhs.coeff(i, j).cloned().unwrap_or_else(|| one.zero_like()).div(c).unwrap())
                .ok_or(FibrationError::ConstantFunction)?;
            let rhs = u.scale(&lambda);
            if lhs == rhs {
                Ok(Equivariance::Multiplicative { lambda })
            } else {
                Err(fail(&one, &lhs, &rhs, &guards))
            }
        }
        FibrationMode::Affine => {
            // lhs = a·w + b·u, one equation per monomial
            let mut monos: Vec<(u32, u32)> = w.terms().map(|(e, _)| *e).collect();
            monos.extend(u.terms().map(|(e, _)| *e));
            let get = |p: &BiPoly<K>, e: &(u32, u32)| p.coeff(e.0, e.1).cloned().unwrap_or_else(|| one.zero_like());
            let rows: Vec<[K; 3]> = monos.iter().map(|e| [get(&w, e), get(&u, e), get(&lhs, e)]).collect();
            let mut sol = None;
            'outer: for (i, r) in rows.iter().enumerate() {
                for s in rows.iter().skip(i + 1) {
                    let det = r[0].mul(&s[1]).sub(&r[1].mul(&s[0]));
                    if !det.is_zero() {
                        let a = r[2].mul(&s[1]).sub(&r[1].mul(&s[2])).div(&det).unwrap();
                        let b = r[0].mul(&s[2]).sub(&r[2].mul(&s[0])).div(&det).unwrap();
                        sol = Some((a, b));
                        break 'outer;
                    }
                }
            }
            let (a, b) = sol.ok_or(FibrationError::ConstantFunction)?;
            let rhs = w.scale(&a).add(&u.scale(&b));
            if lhs == rhs {
                Ok(Equivariance::Affine { a, b })
            } else {
                Err(fail(&one, &lhs, &rhs, &guards))
            }
        }
    }
}

/// W∘f ≡ W as rational functions.
pub fn is_first_integral<K: Field>(map: &QuadraticMap<K>, w: &RationalFunction2<K>) -> Result<bool, FibrationError> {
    let (pn, pd) = compose_parts(w, map);
    if pd.is_zero() {
        return Err(FibrationError::UndefinedComposition);
    }
    Ok(pn.mul(&w.den) == w.num.mul(&pd))
}

/// Least n in 1..=bound with λ^n = 1.
pub fn smallest_root_order<K: Field>(lambda: &K, bound: u32) -> Option<u32> {
    let mut pw = lambda.clone();
    for n in 1..=bound {
        if pw.is_one() {
            return Some(n);
        }
        pw = pw.mul(lambda);
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstIntegral<K> {
    pub w: RationalFunction2<K>,
    pub verified: bool,
}

/// W = V^n, checked against `map` when λ^n = 1.
pub fn first_integral_power<K: Field>(
    map: &QuadraticMap<K>,
    v: &RationalFunction2<K>,
    lambda: &K,
    n: u32,
) -> Result<FirstIntegral<K>, FibrationError> {
    if n == 0 || !lambda.pow(n as u64).is_one() {
        return Err(FibrationError::NotRootOfUnity);
    }
    let w = v.pow(n);
    let verified = is_first_integral(map, &w)?;
    Ok(FirstIntegral { w, verified })
}

/// W = V·h(V)·h(h(V))⋯ with h(t) = a + bt and n factors; b = 1 with a = 0 gives W = V.
pub fn first_integral_affine<K: Field>(
    map: &QuadraticMap<K>,
    v: &RationalFunction2<K>,
    a: &K,
    b: &K,
    n: u32,
) -> Result<FirstIntegral<K>, FibrationError> {
    let w = if b.is_one() {
        if !a.is_zero() {
            return Err(FibrationError::InvalidMultiplier);
        }
        v.clone()
    } else {
        if n == 0 || !b.pow(n as u64).is_one() {
            return Err(FibrationError::InvalidMultiplier);
        }
        let mut factor = v.clone();
        let mut w = v.clone();
        for _ in 1..n {
            factor = factor.affine_image(a, b);
            w = w.mul(&factor);
        }
        w
    };
    let verified = is_first_integral(map, &w)?;
    Ok(FirstIntegral { w, verified })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CatalogFamily {
    T3Linear,
    T4Alpha1Zero,
    T4Alpha1Nonzero,
}

impl CatalogFamily {
    pub fn name(&self) -> &'static str {
        match self {
            CatalogFamily::T3Linear => "T3_linear",
            CatalogFamily::T4Alpha1Zero => "T4_alpha1_zero",
            CatalogFamily::T4Alpha1Nonzero => "T4_alpha1_nonzero",
        }
    }

    pub fn parse(s: &str) -> Option<CatalogFamily> {
        [CatalogFamily::T3Linear, CatalogFamily::T4Alpha1Zero, CatalogFamily::T4Alpha1Nonzero]
            .into_iter()
            .find(|c| c.name() == s)
    }
}

pub struct CatalogEntry<K> {
    pub family: CatalogFamily,
    pub map: QuadraticMap<K>,
    pub v: RationalFunction2<K>,
    pub mode: FibrationMode,
    pub expected: Equivariance<K>,
}

fn bp<K: Field>(one: &K, terms: &[((u32, u32), K)]) -> BiPoly<K> {
    let _ = one;
    BiPoly::from_terms(terms.iter().cloned())
}

/// The explicit families with their fibrations. Parameters:
/// T3_linear `[α1]`, T4_alpha1_zero `[α2, β2]`, T4_alpha1_nonzero `[α0, α1, β0]`.
pub fn catalog_family<K: Field>(family: CatalogFamily, params: &[K]) -> Result<CatalogEntry<K>, FibrationError> {
    let bad = |m: &str| FibrationError::InvalidFamilyParams(m.to_string());
    let one = params.first().ok_or_else(|| bad("missing parameters"))?.one_like();
    let z = one.zero_like();
    let x = BiPoly::x(&one);
    let y = BiPoly::y(&one);
    let c = |k: &K| BiPoly::constant(k.clone());
    match family {
        CatalogFamily::T3Linear => {
            let [a1] = params else { return Err(bad("T3_linear takes [alpha1]")) };
            if a1.is_zero() {
                return Err(bad("alpha1 must be nonzero"));
            }
            let w = a1.mul(a1).sub(&one).div(a1).unwrap();
            let params = MapParams { alpha: [w.clone(), a1.clone(), one.clone()], beta: [w, z.clone(), one.clone()], gamma: [z.clone(), one.clone(), z] };
            let map = build_map(params)?;
            // (1 + α1 x)(α1 + α1 x + y)/x
            let num = c(&one).add(&x.scale(a1)).mul(&c(a1).add(&x.scale(a1)).add(&y));
            let v = RationalFunction2::new(num, x)?;
            Ok(CatalogEntry { family, map, v, mode: FibrationMode::Multiplicative, expected: Equivariance::Multiplicative { lambda: a1.clone() } })
        }
        CatalogFamily::T4Alpha1Zero => {
            let [a2, b2] = params else { return Err(bad("T4_alpha1_zero takes [alpha2, beta2]")) };
            if a2.is_zero() || b2.is_zero() {
                return Err(bad("alpha2 and beta2 must be nonzero"));
            }
            let ab = a2.mul(b2);
            let params = MapParams {
                alpha: [z.clone(), z.clone(), a2.clone()],
                beta: [z.clone(), z.clone(), b2.clone()],
                gamma: [ab.neg(), one.clone(), one.clone()],
            };
            let map = build_map(params)?;
            // (β2 - y)(α2β2 - x)/y
            let num = c(b2).sub(&y).mul(&c(&ab).sub(&x));
            let v = RationalFunction2::new(num, y)?;
            Ok(CatalogEntry { family, map, v, mode: FibrationMode::Multiplicative, expected: Equivariance::Multiplicative { lambda: a2.neg() } })
        }
        CatalogFamily::T4Alpha1Nonzero => {
            let [a0, a1, b0] = params else { return Err(bad("T4_alpha1_nonzero takes [alpha0, alpha1, beta0]")) };
            if a1.is_zero() {
                return Err(bad("alpha1 must be nonzero"));
            }
            let params = MapParams {
                alpha: [a0.clone(), a1.clone(), z.clone()],
                beta: [b0.clone(), z.clone(), one.clone()],
                gamma: [z.clone(), one.clone(), one.clone()],
            };
            let map = build_map(params)?;
            let v = RationalFunction2::polynomial(bp(&one, &[((1, 0), one.clone())]), &one);
            Ok(CatalogEntry { family, map, v, mode: FibrationMode::Affine, expected: Equivariance::Affine { a: a0.clone(), b: a1.clone() } })
        }
    }
}

/// Fibration data attached to a classification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibrationAttachment {
    pub family: String,
    pub v: String,
    pub factor: String,
    pub verified: bool,
    pub first_integral: Option<String>,
    pub first_integral_verified: Option<bool>,
}

/// Recognize a catalog family from the map's parameters and verify its fibration.
pub fn attachments<K: Field>(map: &QuadraticMap<K>) -> Vec<FibrationAttachment> {
    let p = &map.params;
    let (a, b, g) = (&p.alpha, &p.beta, &p.gamma);
    let one = map.unit();
    let z = |k: &K| k.is_zero();
    let o = |k: &K| k.is_one();
    let mut candidates: Vec<CatalogEntry<K>> = Vec::new();
    if z(&g[0]) && o(&g[1]) && z(&g[2]) && o(&a[2]) && o(&b[2]) && z(&b[1]) && !z(&a[1]) {
        if let Ok(e) = catalog_family(CatalogFamily::T3Linear, &[a[1].clone()]) {
            if e.map.params == *p {
                candidates.push(e);
            }
        }
    }
    if z(&a[0]) && z(&a[1]) && z(&b[0]) && z(&b[1]) && o(&g[1]) && o(&g[2]) {
        if let Ok(e) = catalog_family(CatalogFamily::T4Alpha1Zero, &[a[2].clone(), b[2].clone()]) {
            if e.map.params == *p {
                candidates.push(e);
            }
        }
    }
    if z(&a[2]) && z(&b[1]) && o(&b[2]) && z(&g[0]) && o(&g[1]) && o(&g[2]) {
        if let Ok(e) = catalog_family(CatalogFamily::T4Alpha1Nonzero, &[a[0].clone(), a[1].clone(), b[0].clone()]) {
            candidates.push(e);
        }
    }
    candidates
        .into_iter()
        .map(|e| {
            let found = verify_eigen_fibration(&e.map, &e.v, e.mode);
            let verified = found.as_ref().ok() == Some(&e.expected);
            let (factor, fi) = match &e.expected {
                Equivariance::Multiplicative { lambda } => {
                    let fi = smallest_root_order(lambda, 12).and_then(|n| first_integral_power(&e.map, &e.v, lambda, n).ok());
                    (format!("lambda = {}", lambda), fi)
                }
                Equivariance::Affine { a, b } => {
                    let n = if b.is_one() { Some(1) } else { smallest_root_order(b, 12) };
                    let fi = n.and_then(|n| first_integral_affine(&e.map, &e.v, a, b, n).ok());
                    (format!("a = {}, b = {}", a, b), fi)
                }
            };
            let _ = &one;
            FibrationAttachment {
                family: e.family.name().to_string(),
                v: e.v.to_string(),
                factor,
                verified,
                first_integral: fi.as_ref().map(|f| f.w.to_string()),
                first_integral_verified: fi.map(|f| f.verified),
            }
        })
        .collect()
}

/// Q(i) helper for the common case.
pub fn gaussian_catalog(family: CatalogFamily, params: &[i64]) -> Result<CatalogEntry<GaussianRational>, FibrationError> {
    let ps: Vec<GaussianRational> = params.iter().map(|&v| GaussianRational::from_int(v)).collect();
    catalog_family(family, &ps)
}

#[cfg(test)]
mod tests {
    use super::*;
    type G = GaussianRational;

    #[test]
    fn t3_linear_multiplier() {
        let e = gaussian_catalog(CatalogFamily::T3Linear, &[2]).unwrap();
        assert_eq!(e.map.params.alpha[0], G::from_ratio(3, 2));
        let r = verify_eigen_fibration(&e.map, &e.v, FibrationMode::Multiplicative).unwrap();
        assert_eq!(r, Equivariance::Multiplicative { lambda: G::from_int(2) });
    }

    #[test]
    fn t4_alpha1_zero_multiplier() {
        let e = gaussian_catalog(CatalogFamily::T4Alpha1Zero, &[2, 1]).unwrap();
        let r = verify_eigen_fibration(&e.map, &e.v, FibrationMode::Multiplicative).unwrap();
        assert_eq!(r, Equivariance::Multiplicative { lambda: G::from_int(-2) });
    }

    #[test]
    fn t4_alpha1_nonzero_affine() {
        let e = gaussian_catalog(CatalogFamily::T4Alpha1Nonzero, &[3, 5, 7]).unwrap();
        let r = verify_eigen_fibration(&e.map, &e.v, FibrationMode::Affine).unwrap();
        assert_eq!(r, Equivariance::Affine { a: G::from_int(3), b: G::from_int(5) });
    }

    #[test]
    fn wrong_function_is_rejected_with_witness() {
        let e = gaussian_catalog(CatalogFamily::T3Linear, &[2]).unwrap();
        let v = RationalFunction2::polynomial(BiPoly::y(&G::one()), &G::one());
        assert!(matches!(verify_eigen_fibration(&e.map, &v, FibrationMode::Multiplicative), Err(FibrationError::NotEquivariant { .. })));
    }

    #[test]
    fn square_is_first_integral_for_minus_one() {
        let e = gaussian_catalog(CatalogFamily::T4Alpha1Zero, &[1, 1]).unwrap();
        let lambda = G::from_int(-1);
        assert_eq!(smallest_root_order(&lambda, 12), Some(2));
        let fi = first_integral_power(&e.map, &e.v, &lambda, 2).unwrap();
        assert!(fi.verified);
        assert!(!is_first_integral(&e.map, &e.v).unwrap());
    }

    #[test]
    fn root_of_unity_checks() {
        let e = gaussian_catalog(CatalogFamily::T3Linear, &[2]).unwrap();
        assert_eq!(first_integral_power(&e.map, &e.v, &G::from_int(2), 3), Err(FibrationError::NotRootOfUnity));
        assert!(G::i().pow(4).is_one());
        assert_eq!(smallest_root_order(&G::i(), 12), Some(4));
    }

    #[test]
    fn affine_first_integrals() {
        let e = gaussian_catalog(CatalogFamily::T4Alpha1Nonzero, &[1, -1, 2]).unwrap();
        let fi = first_integral_affine(&e.map, &e.v, &G::from_int(1), &G::from_int(-1), 2).unwrap();
        assert!(fi.verified);
        let expect = BiPoly::from_terms([((1, 0), G::one()), ((2, 0), G::from_int(-1))]);
        assert_eq!(fi.w.num, expect);
        let id = gaussian_catalog(CatalogFamily::T4Alpha1Nonzero, &[0, 1, 2]).unwrap();
        let fi = first_integral_affine(&id.map, &id.v, &G::zero(), &G::one(), 1).unwrap();
        assert!(fi.verified);
        assert_eq!(
            first_integral_affine(&e.map, &e.v, &G::from_int(1), &G::from_int(2), 2),
            Err(FibrationError::InvalidMultiplier)
        );
    }

    #[test]
    fn attachments_recognize_catalog_maps() {
        let e = gaussian_catalog(CatalogFamily::T4Alpha1Zero, &[1, 1]).unwrap();
        let at = attachments(&e.map);
        assert_eq!(at.len(), 1);
        assert!(at[0].verified);
        assert_eq!(at[0].first_integral_verified, Some(true));
    }
}
