//! Real root isolation by Sturm sequences and rational bisection.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::gaussian::GaussianRational;
use super::unipoly::UniPoly;
use super::AlgebraError;

type QPoly = UniPoly<BigRational>;

/// An isolating interval `(lo, hi]` refined around a real root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootApprox {
    pub lo: BigRational,
    pub hi: BigRational,
    /// Midpoint rendered to `DECIMALS` places.
    pub decimal: String,
}

pub const DECIMALS: usize = 15;

pub fn to_real_poly(p: &UniPoly<GaussianRational>) -> Result<QPoly, AlgebraError> {
    let coeffs: Option<Vec<BigRational>> =
        p.coeffs().iter().map(|c| if c.is_real() { Some(c.re.clone()) } else { None }).collect();
    coeffs.map(UniPoly::new).ok_or(AlgebraError::NonRealCoefficients)
}

struct Sturm {
    chain: Vec<QPoly>,
}

impl Sturm {
    fn new(p: &QPoly) -> Sturm {
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].rem(&chain[n - 1]).unwrap().neg();
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        Sturm { chain }
    }

    fn sign_changes(&self, x: &BigRational) -> usize {
        let mut last = 0i8;
        let mut n = 0;
        for q in &self.chain {
            let v = q.eval(x);
            let s = if v.is_zero() { 0 } else if v.is_positive() { 1 } else { -1 };
            if s != 0 {
                if last != 0 && s != last {
                    n += 1;
                }
                last = s;
            }
        }
        n
    }

    /// Number of distinct real roots in (a, b].
    fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.sign_changes(a) - self.sign_changes(b)
    }
}

fn cauchy_bound(p: &QPoly) -> BigRational {
    let lc = p.lc().unwrap().abs();
    let m = p.coeffs().iter().map(|c| c.abs() / &lc).max().unwrap_or_else(BigRational::zero);
    m + BigRational::from_integer(BigInt::from(1))
}

/// Disjoint intervals `(lo, hi]`, sorted, each holding exactly one real root.
pub fn isolate_real_roots(p: &QPoly) -> Result<Vec<(BigRational, BigRational)>, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let sq = p.squarefree_part();
    let st = Sturm::new(&sq);
    let b = cauchy_bound(&sq);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        match st.count(&lo, &hi) {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Largest real root, refined until the interval is narrower than `tol`
/// (and narrow enough to render the fixed decimal precision).
pub fn largest_real_root(p: &QPoly, tol: &BigRational) -> Result<RootApprox, AlgebraError> {
    let roots = isolate_real_roots(p)?;
    let (mut lo, mut hi) = roots.last().cloned().ok_or(AlgebraError::NoRealRoot)?;
    let sq = p.squarefree_part();
    let render_tol = BigRational::new(BigInt::from(1), BigInt::from(10).pow(DECIMALS as u32 + 3));
    let target = if tol < &render_tol { tol.clone() } else { render_tol };
    let two = BigRational::from_integer(BigInt::from(2));
    if sq.eval(&hi).is_zero() {
        lo = hi.clone();
    }
    while &hi - &lo > target {
        let mid = (&lo + &hi) / &two;
        let fm = sq.eval(&mid);
        if fm.is_zero() {
            lo = mid.clone();
            hi = mid;
            break;
        }
        let fh = sq.eval(&hi);
        if fm.is_positive() == fh.is_positive() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mid = (&lo + &hi) / &two;
    Ok(RootApprox { decimal: render_decimal(&mid, DECIMALS), lo, hi })
}

/// Round-half-up decimal rendering with a fixed number of places.
pub fn render_decimal(q: &BigRational, places: usize) -> String {
    let scale = BigInt::from(10).pow(places as u32);
    let neg = q.is_negative();
    let a = q.abs() * BigRational::from_integer(scale.clone());
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let r = (a + half).floor().to_integer();
    let int = &r / &scale;
    let frac = &r % &scale;
    let sign = if neg && !r.is_zero() { "-" } else { "" };
    if places == 0 {
        return format!("{}{}", sign, int);
    }
    format!("{}{}.{:0>width$}", sign, int, frac.to_string(), width = places)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn golden_polynomial_has_two_roots() {
        let p = QPoly::from_i64s(&[-1, -1, 1]);
        let r = isolate_real_roots(&p).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r[0].0 < q(-618, 1000) && q(-618, 1000) < r[0].1);
        assert!(r[1].0 < q(1618, 1000) && q(1618, 1000) < r[1].1);
        let top = largest_real_root(&p, &q(1, 1_000_000_000_000)).unwrap();
        assert_eq!(top.decimal, "1.618033988749895");
    }

    #[test]
    fn fifth_roots_of_unity() {
        let p = QPoly::from_i64s(&[-1, 0, 0, 0, 0, 1]);
        let r = isolate_real_roots(&p).unwrap();
        assert_eq!(r.len(), 1);
        let top = largest_real_root(&p, &q(1, 1_000_000)).unwrap();
        assert_eq!(top.decimal, "1.000000000000000");
    }

    #[test]
    fn double_root_at_one() {
        let p = QPoly::from_i64s(&[1, -2, 1]);
        assert_eq!(largest_real_root(&p, &q(1, 1000)).unwrap().decimal, "1.000000000000000");
    }

    #[test]
    fn no_real_root() {
        let p = QPoly::from_i64s(&[1, 0, 1]);
        assert_eq!(largest_real_root(&p, &q(1, 1000)), Err(AlgebraError::NoRealRoot));
    }

    #[test]
    fn complex_coefficients_rejected() {
        let p = UniPoly::new(vec![GaussianRational::i(), GaussianRational::one()]);
        assert_eq!(to_real_poly(&p), Err(AlgebraError::NonRealCoefficients));
    }

    #[test]
    fn decimals() {
        assert_eq!(render_decimal(&q(1, 3), 3), "0.333");
        assert_eq!(render_decimal(&q(-2, 3), 2), "-0.67");
        assert_eq!(render_decimal(&q(5, 1), 0), "5");
    }
}
