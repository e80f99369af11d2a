//! Degree sequences of the iterates F^n and their growth profile.
//!
//! Small iterates are composed exactly with gcd stripping. Beyond that the
//! iteration continues on the restriction of F^n to random lines over F_p,
//! which has the same degree for a generic line; the two routes are compared
//! on the exact prefix.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{ExactField, Fp, HomogeneousPoly3, ModularContext, UniPoly};
use crate::map::{is_zero_vec, proportional, QuadraticMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("sequence too short: need more than {0} terms")]
    SequenceTooShort(usize),
    #[error("recurrence polynomial must be monic with integer coefficients")]
    BadPolynomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Truncation {
    Depth,
    DegreeCap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSequence {
    /// d_1, d_2, …
    pub degrees: Vec<u64>,
    pub truncated_by: Truncation,
    /// Number of leading terms computed by exact composition.
    pub exact_terms: usize,
    /// The line route disagreed with exact composition on the prefix.
    pub route_mismatch: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub depth: usize,
    pub degree_cap: u64,
    /// Exact composition is used while deg G_n stays at or below this.
    pub exact_degree_cap: u64,
    /// and for at most this many terms.
    pub exact_terms_cap: usize,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { depth: 12, degree_cap: 4096, exact_degree_cap: 6, exact_terms_cap: 4, seed: 0x0dd5_eed5 }
    }
}

type Comps<K> = [HomogeneousPoly3<K>; 3];

/// G_{n+1} = F ∘ G_n with the gcd of the three components divided out.
pub fn compose_step<K: ExactField>(f: &Comps<K>, g: &Comps<K>, ctx: &ModularContext) -> Comps<K> {
    let raw: Vec<HomogeneousPoly3<K>> = f.iter().map(|fi| fi.compose(g)).collect();
    let h = raw[0].gcd_exact(&raw[1], ctx).gcd_exact(&raw[2], ctx);
    if h.is_constant() {
        return [raw[0].clone(), raw[1].clone(), raw[2].clone()];
    }
    std::array::from_fn(|i| raw[i].exact_div(&h).expect("gcd divides"))
}

/// Exact iterates G_1 … G_n.
pub fn exact_iterates<K: ExactField>(map: &QuadraticMap<K>, n: usize) -> Vec<Comps<K>> {
    let ctx = ModularContext::for_field(&map.unit(), 0);
    let mut out: Vec<Comps<K>> = vec![map.components.clone()];
    while out.len() < n {
        let next = compose_step(&map.components, out.last().unwrap(), &ctx);
        out.push(next);
    }
    out.truncate(n);
    out
}

/// Dense polynomials over F_p, p < 2^31, coefficients low to high and
/// trimmed. Products of two residues fit in 62 bits, so reduction is Barrett
/// with a single high multiply.
#[derive(Clone, Copy)]
struct SmallPrime {
    p: u64,
    m: u64,
}

impl SmallPrime {
    fn new(p: u64) -> Self {
        assert!(p < 1 << 31);
        SmallPrime { p, m: ((1u128 << 62) / p as u128) as u64 }
    }

    /// x mod p for x < 2^62.
    #[inline]
    fn reduce(&self, x: u64) -> u64 {
        let q = ((x as u128 * self.m as u128) >> 62) as u64;
        let r = x - q * self.p;
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }

    fn inv(&self, a: u64) -> u64 {
        let (mut acc, mut base, mut e) = (1u64, a, self.p - 2);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.reduce(acc * base);
            }
            base = self.reduce(base * base);
            e >>= 1;
        }
        acc
    }

    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut acc = vec![0u128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (slot, &y) in acc[i..].iter_mut().zip(b) {
                *slot += (x * y) as u128;
            }
        }
        let mut out: Vec<u64> = acc.into_iter().map(|c| (c % self.p as u128) as u64).collect();
        Self::trim(&mut out);
        out
    }

    fn add_scaled(&self, acc: &mut Vec<u64>, a: &[u64], c: u64) {
        if acc.len() < a.len() {
            acc.resize(a.len(), 0);
        }
        for (slot, &x) in acc.iter_mut().zip(a) {
            *slot = self.reduce(*slot + self.reduce(x * c));
        }
        Self::trim(acc);
    }

    /// Quotient and remainder of a by b ≠ 0.
    fn divrem(&self, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let db = b.len() - 1;
        let mut r = a.to_vec();
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let li = self.inv(b[db]);
        let mut q = vec![0u64; r.len() - db];
        for i in (db..r.len()).rev() {
            let c = self.reduce(r[i] * li);
            if c == 0 {
                continue;
            }
            q[i - db] = c;
            let nc = self.p - c;
            for (slot, &y) in r[i - db..=i].iter_mut().zip(b) {
                *slot = self.reduce(*slot + nc * y);
            }
        }
        r.truncate(db);
        Self::trim(&mut r);
        Self::trim(&mut q);
        (q, r)
    }

    fn gcd(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let (_, r) = self.divrem(&a, &b);
            a = std::mem::replace(&mut b, r);
        }
        a
    }
}

/// Degrees of F^n restricted to the line `base + t dir`, gcd stripped.
fn line_degrees(comps: &Comps<Fp>, base: [Fp; 3], dir: [Fp; 3], depth: usize, cap: u64) -> Vec<u64> {
    let sp = SmallPrime::new(base[0].p);
    let mut c: [Vec<u64>; 3] = std::array::from_fn(|i| {
        let mut v = vec![base[i].v, dir[i].v];
        SmallPrime::trim(&mut v);
        v
    });
    let mut out = Vec::new();
    for _ in 0..depth {
        // monomials shared by the three components are formed once
        let mut monos: BTreeMap<[u32; 3], Vec<u64>> = BTreeMap::new();
        let raw: [Vec<u64>; 3] = std::array::from_fn(|k| {
            let mut acc = Vec::new();
            for (e, coef) in comps[k].terms() {
                let m = monos
                    .entry(*e)
                    .or_insert_with(|| {
                        let mut m = vec![1u64];
                        for i in 0..3 {
                            for _ in 0..e[i] {
                                m = sp.mul(&m, &c[i]);
                            }
                        }
                        m
                    })
                    .clone();
                sp.add_scaled(&mut acc, &m, coef.v);
            }
            acc
        });
        let g = sp.gcd(&sp.gcd(&raw[0], &raw[1]), &raw[2]);
        c = if g.len() > 1 { std::array::from_fn(|i| sp.divrem(&raw[i], &g).0) } else { raw };
        let d = c.iter().map(|p| p.len().saturating_sub(1)).max().unwrap_or(0) as u64;
        out.push(d);
        if d >= cap {
            break;
        }
    }
    out
}

fn random_fp(rng: &mut ChaCha8Rng, p: u64) -> Fp {
    Fp::new(rng.gen_range(1..p), p)
}

/// Degree sequence d_1 … d_depth, stopping early once d_n reaches `degree_cap`.
pub fn iterate_degrees<K: ExactField>(map: &QuadraticMap<K>, cfg: &OracleConfig) -> DegreeSequence {
    let ctx = ModularContext::for_field(&map.unit(), 0);
    let mut exact = Vec::new();
    let mut g = map.components.clone();
    while exact.len() < cfg.depth {
        let d = g[0].degree() as u64;
        exact.push(d);
        if d > cfg.exact_degree_cap || d >= cfg.degree_cap || exact.len() >= cfg.depth.min(cfg.exact_terms_cap) {
            break;
        }
        g = compose_step(&map.components, &g, &ctx);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    // each line may only underestimate a degree; take the larger of two
    let mut line: Vec<u64> = Vec::new();
    for skip in 1..8 {
        if line.len() >= 2 * cfg.depth {
            break;
        }
        let lctx = ModularContext::for_field_below(&map.unit(), skip, 31);
        let Some(m) = map.reduce(&lctx) else { continue };
        let base = std::array::from_fn(|_| random_fp(&mut rng, lctx.p));
        let dir = std::array::from_fn(|_| random_fp(&mut rng, lctx.p));
        let degs = line_degrees(&m.components, base, dir, cfg.depth, cfg.degree_cap);
        if line.is_empty() {
            line = degs;
        } else {
            line = line.iter().zip(degs.iter()).map(|(a, b)| *a.max(b)).collect();
            break;
        }
    }
    let route_mismatch = exact.iter().zip(line.iter()).any(|(a, b)| a != b);
    let mut degrees = exact.clone();
    degrees.extend(line.iter().skip(exact.len()));
    let truncated_by = if degrees.len() < cfg.depth { Truncation::DegreeCap } else { Truncation::Depth };
    DegreeSequence { degrees, truncated_by, exact_terms: exact.len(), route_mismatch }
}

/// Smallest n with d_n = 1 and F^n = id. A projective linear map fixing five
/// random points of P²(F_p) is the identity; two primes are used.
pub fn map_period<K: ExactField>(map: &QuadraticMap<K>, degrees: &[u64], seed: u64) -> Option<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reduced = Vec::new();
    for skip in 1..8 {
        let ctx = ModularContext::for_field(&map.unit(), skip);
        if let Some(m) = map.reduce(&ctx) {
            let pts: Vec<[Fp; 3]> = (0..5).map(|_| std::array::from_fn(|_| random_fp(&mut rng, ctx.p))).collect();
            reduced.push((m, pts));
        }
        if reduced.len() == 2 {
            break;
        }
    }
    if reduced.len() < 2 {
        return None;
    }
    // orbits of the sample points, one step per degree term
    let mut cur: Vec<Vec<[Fp; 3]>> = reduced.iter().map(|(_, pts)| pts.clone()).collect();
    for (n, &d) in degrees.iter().enumerate() {
        for (i, (m, _)) in reduced.iter().enumerate() {
            for q in cur[i].iter_mut() {
                *q = m.eval_raw(q);
            }
        }
        let fixed = reduced.iter().zip(cur.iter()).all(|((_, pts), now)| {
            pts.iter().zip(now.iter()).all(|(a, b)| !is_zero_vec(b) && proportional(a, b))
        });
        if d == 1 && fixed {
            return Some(n + 1);
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum RecurrenceVerdict {
    /// The recurrence holds for every window starting at n ≥ `from` (1-based).
    Holds { from: usize },
    /// Smallest n (1-based) whose window violates the recurrence.
    Fails { first_violation: usize },
}

/// Integer coefficients c_0 … c_K of a monic polynomial.
fn monic_int_coeffs(poly: &UniPoly<BigRational>) -> Result<Vec<BigInt>, OracleError> {
    let c = poly.integer_coeffs().ok_or(OracleError::BadPolynomial)?;
    if c.last().is_none_or(|l| *l != BigInt::from(1)) {
        return Err(OracleError::BadPolynomial);
    }
    Ok(c)
}

/// Check d_{n+K} = -(c_0 d_n + … + c_{K-1} d_{n+K-1}) for all observed n ≥ n_0,
/// with the smallest n_0 ≤ `max_offset`.
pub fn check_recurrence(seq: &[u64], poly: &UniPoly<BigRational>, max_offset: usize) -> Result<RecurrenceVerdict, OracleError> {
    let c = monic_int_coeffs(poly)?;
    let k = c.len() - 1;
    if seq.len() <= k + max_offset {
        return Err(OracleError::SequenceTooShort(k + max_offset));
    }
    let holds_at = |n: usize| {
        let s: BigInt = (0..=k).map(|i| &c[i] * BigInt::from(seq[n + i])).sum();
        s.is_zero()
    };
    let windows = seq.len() - k;
    let bad: Vec<usize> = (0..windows).filter(|&n| !holds_at(n)).collect();
    match bad.last() {
        None => Ok(RecurrenceVerdict::Holds { from: 1 }),
        Some(&last) if last + 2 <= max_offset => Ok(RecurrenceVerdict::Holds { from: last + 2 }),
        Some(_) => Ok(RecurrenceVerdict::Fails { first_violation: bad[0] + 1 }),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "profile", rename_all = "snake_case")]
pub enum SequenceProfile {
    /// d_{n+T} = d_n on the whole window.
    Periodic { period: usize },
    /// Eventually constant.
    Constant,
    /// Eventually periodic with a period above 1.
    Bounded { period: usize },
    /// Lag-T differences eventually constant and nonzero.
    Linear { lag: usize },
    /// Second lag-T differences eventually constant and nonzero.
    Quadratic { lag: usize },
    ExponentialEstimate { rate: f64 },
}

/// Largest transient skipped before a pattern must hold.
pub const MAX_TRANSIENT: usize = 4;

fn lag_diff(s: &[i128], t: usize) -> Vec<i128> {
    (t..s.len()).map(|i| s[i] - s[i - t]).collect()
}

/// Smallest offset ≤ MAX_TRANSIENT after which `s` is constant for at least
/// `min_run` terms.
fn eventually_constant(s: &[i128], min_run: usize) -> Option<(usize, i128)> {
    (0..=MAX_TRANSIENT.min(s.len())).find_map(|o| {
        let tail = &s[o..];
        (tail.len() >= min_run && tail.iter().all(|v| *v == tail[0])).then(|| (o, tail[0]))
    })
}

pub fn sequence_profile(seq: &[u64]) -> Result<SequenceProfile, OracleError> {
    if seq.len() < 8 {
        return Err(OracleError::SequenceTooShort(8));
    }
    let s: Vec<i128> = seq.iter().map(|&d| d as i128).collect();
    let n = s.len();
    for t in 1..=n / 2 {
        let d = lag_diff(&s, t);
        if let Some((o, 0)) = eventually_constant(&d, t.max(2)) {
            return Ok(match (o, t) {
                (0, _) => SequenceProfile::Periodic { period: t },
                (_, 1) => SequenceProfile::Constant,
                _ => SequenceProfile::Bounded { period: t },
            });
        }
    }
    for t in 1..=n / 3 {
        let d = lag_diff(&s, t);
        if let Some((_, c)) = eventually_constant(&d, t.max(3)) {
            if c != 0 {
                return Ok(SequenceProfile::Linear { lag: t });
            }
        }
    }
    for t in 1..=n / 4 {
        let d2 = lag_diff(&lag_diff(&s, t), t);
        if let Some((_, c)) = eventually_constant(&d2, t.max(3)) {
            if c != 0 {
                return Ok(SequenceProfile::Quadratic { lag: t });
            }
        }
    }
    let tail = &seq[n / 2..];
    let ratios: Vec<f64> = tail.windows(2).map(|w| w[1] as f64 / w[0] as f64).collect();
    let rate = ratios.iter().sum::<f64>() / ratios.len() as f64;
    Ok(SequenceProfile::ExponentialEstimate { rate })
}

/// Exact fit d_n = a + b n + c(-1)^n on the last `window` terms, if consistent.
pub fn affine_parity_fit(seq: &[u64], window: usize) -> Option<(BigRational, BigRational, BigRational)> {
    let n = seq.len();
    if n < 4 || window < 4 || window > n {
        return None;
    }
    let q = |v: i64| BigRational::from_integer(BigInt::from(v));
    let start = n - window;
    // with N = start+1 (1-based) use terms N, N+1, N+2 to solve, the rest to check
    let idx = |i: usize| (start + i + 1) as i64;
    let sign = |m: i64| if m % 2 == 0 { q(1) } else { q(-1) };
    let d = |i: usize| q(seq[start + i] as i64);
    // d(N+2) - d(N) = 2b
    let b = (d(2) - d(0)) / q(2);
    // d(N+1) - d(N) = b + c((-1)^{N+1} - (-1)^N) = b - 2c(-1)^N
    let c = (d(0) + &b - d(1)) / (q(2) * sign(idx(0)));
    let a = d(0) - &b * q(idx(0)) - &c * sign(idx(0));
    let ok = (0..window).all(|i| a.clone() + &b * q(idx(i)) + &c * sign(idx(i)) == d(i));
    ok.then_some((a, b, c))
}

/// Render a rational for reports.
pub fn rat_string(q: &BigRational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Average growth ratio as a plain number, for diagnostics.
pub fn tail_ratio(seq: &[u64]) -> Option<f64> {
    let n = seq.len();
    if n < 2 {
        return None;
    }
    let a = BigRational::new(BigInt::from(seq[n - 1]), BigInt::from(seq[n - 2].max(1)));
    a.abs().to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GaussianRational;
    use crate::map::{build_map, MapParams};

    fn map(a: [i64; 3], b: [i64; 3], g: [i64; 3]) -> QuadraticMap<GaussianRational> {
        build_map(MapParams::from_ints(a, b, g)).unwrap()
    }

    #[test]
    fn lyness_degrees() {
        let m = map([0, 0, 1], [1, 0, 1], [0, 1, 0]);
        let cfg = OracleConfig { depth: 10, ..Default::default() };
        let s = iterate_degrees(&m, &cfg);
        assert_eq!(s.degrees, vec![2, 2, 2, 2, 1, 2, 2, 2, 2, 1]);
        assert!(!s.route_mismatch);
        assert_eq!(map_period(&m, &s.degrees, 7), Some(5));
    }

    #[test]
    fn map_period_exceeds_degree_period() {
        // d_n alternates 2, 1 but F^2 is a linear map of order 3
        let m = map([-2, 0, -2], [-2, -1, -2], [0, 1, 0]);
        let s = iterate_degrees(&m, &OracleConfig { depth: 12, ..Default::default() });
        assert_eq!(s.degrees[..4], [2, 1, 2, 1]);
        assert_eq!(map_period(&m, &s.degrees, 7), Some(6));
        let t1 = map([0, 1, 1], [1, 2, 1], [1, 1, 2]);
        assert_eq!(map_period(&t1, &[2, 4, 8], 7), None);
    }

    #[test]
    fn generic_degrees_double() {
        let m = map([0, 1, 1], [1, 2, 1], [1, 1, 2]);
        let cfg = OracleConfig { depth: 8, ..Default::default() };
        let s = iterate_degrees(&m, &cfg);
        assert_eq!(s.degrees, vec![2, 4, 8, 16, 32, 64, 128, 256]);
        assert!(!s.route_mismatch);
    }

    #[test]
    fn degree_cap_stops_early() {
        let m = map([0, 1, 1], [1, 2, 1], [1, 1, 2]);
        let cfg = OracleConfig { depth: 20, degree_cap: 64, ..Default::default() };
        let s = iterate_degrees(&m, &cfg);
        assert_eq!(s.degrees.last(), Some(&64));
        assert_eq!(s.truncated_by, Truncation::DegreeCap);
    }

    #[test]
    fn recurrences() {
        let p5 = UniPoly::<BigRational>::from_i64s(&[-1, 0, 0, 0, 0, 1]);
        assert_eq!(check_recurrence(&[2, 3, 3, 2, 1, 2, 3, 3, 2, 1], &p5, 1), Ok(RecurrenceVerdict::Holds { from: 1 }));
        let lin = UniPoly::<BigRational>::from_i64s(&[1, -1, -1, 1]);
        assert_eq!(check_recurrence(&[2, 2, 3, 3, 4, 4, 5, 5], &lin, 2), Ok(RecurrenceVerdict::Holds { from: 1 }));
        let xm1 = UniPoly::<BigRational>::from_i64s(&[-1, 1]);
        assert_eq!(check_recurrence(&[2, 4, 8, 16], &xm1, 2), Ok(RecurrenceVerdict::Fails { first_violation: 1 }));
        assert!(check_recurrence(&[2, 4], &xm1, 2).is_err());
    }

    #[test]
    fn recurrence_after_transient() {
        let xm2 = UniPoly::<BigRational>::from_i64s(&[-2, 1]);
        assert_eq!(check_recurrence(&[3, 4, 8, 16, 32, 64], &xm2, 3), Ok(RecurrenceVerdict::Holds { from: 2 }));
    }

    #[test]
    fn profiles() {
        assert_eq!(sequence_profile(&[2, 3, 3, 2, 1, 2, 3, 3, 2, 1]), Ok(SequenceProfile::Periodic { period: 5 }));
        assert_eq!(sequence_profile(&[2, 2, 3, 3, 4, 4, 5, 5]), Ok(SequenceProfile::Linear { lag: 2 }));
        assert_eq!(sequence_profile(&[2, 4, 8, 16, 32, 64, 128, 256]), Ok(SequenceProfile::ExponentialEstimate { rate: 2.0 }));
        assert_eq!(sequence_profile(&[2, 3, 4, 4, 4, 4, 4, 4]), Ok(SequenceProfile::Constant));
        assert_eq!(sequence_profile(&[1, 4, 9, 16, 25, 36, 49, 64, 81]), Ok(SequenceProfile::Quadratic { lag: 1 }));
        assert!(sequence_profile(&[1, 2]).is_err());
    }

    #[test]
    fn parity_fit() {
        // d_n = 5/4 + n/2 - (-1)^n/4
        let seq: Vec<u64> = (1..=12).map(|n: i64| ((5 + 2 * n - if n % 2 == 0 { 1 } else { -1 }) / 4) as u64).collect();
        assert_eq!(&seq[..6], &[2, 2, 3, 3, 4, 4]);
        let (a, b, c) = affine_parity_fit(&seq, 10).unwrap();
        assert_eq!(rat_string(&a), "5/4");
        assert_eq!(rat_string(&b), "1/2");
        assert_eq!(rat_string(&c), "-1/4");
    }

    #[test]
    fn iterates_agree_with_pointwise_iteration() {
        let m = map([0, 1, 1], [1, 2, 1], [1, 1, 2]);
        let it = exact_iterates(&m, 3);
        let p = [3, 5, 7].map(GaussianRational::from_int);
        let mut q = p.clone();
        for g in &it {
            q = m.eval_raw(&q);
            let v: [GaussianRational; 3] = std::array::from_fn(|i| g[i].eval(&p));
            assert!(crate::map::proportional(&q, &v));
        }
    }
}
