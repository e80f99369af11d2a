//! Shared instances for the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use biratlab::algebra::{AlgebraicNumber, Field, GaussianRational, NumberField, UniPoly};
use biratlab::classify::{classify, ClassificationReport, ClassifyConfig};
use biratlab::map::{build_map, MapParams, QuadraticMap};
use num_rational::BigRational;

pub type G = GaussianRational;

pub fn gmap(a: [i64; 3], b: [i64; 3], g: [i64; 3]) -> QuadraticMap<G> {
    build_map(MapParams::from_ints(a, b, g)).expect("valid map")
}

pub fn lyness() -> QuadraticMap<G> {
    gmap([0, 0, 1], [1, 0, 1], [0, 1, 0])
}

/// f = (y, (a + b x + y)/x), the normal form of the T3a branch.
pub fn t3a_normal_form<K: Field>(a: K, b: K) -> QuadraticMap<K> {
    let one = a.one_like();
    let z = a.zero_like();
    let params = MapParams {
        alpha: [z.clone(), z.clone(), one.clone()],
        beta: [a, b, one.clone()],
        gamma: [z.clone(), one, z],
    };
    build_map(params).expect("valid map")
}

fn field(coeffs: &[i64], name: &str) -> Arc<NumberField> {
    NumberField::new(UniPoly::from_i64s(coeffs), name)
}

/// a0 + a1 t + a2 t^2 + … over `k`, with all coefficients divided by `den`.
fn elt(k: &Arc<NumberField>, coeffs: &[i64], den: i64) -> AlgebraicNumber {
    let c: Vec<BigRational> = coeffs.iter().map(|&v| BigRational::new(v.into(), den.into())).collect();
    AlgebraicNumber::from_poly(k, UniPoly::new(c))
}

/// T3a maps whose orbit of A_2 reaches O_0 after exactly p steps, p = 0..=5.
/// Small p live over Q(i); larger p need the number fields below.
pub fn classify_t3a_hit(p: u32, cfg: &ClassifyConfig) -> ClassificationReport {
    match p {
        0 => classify(&gmap([-2, 0, -2], [-2, -1, -2], [0, 1, 0]), cfg).unwrap(),
        1 => classify(&lyness(), cfg).unwrap(),
        2 => classify(&t3a_normal_form(G::new(q(1, 2), q(-1, 2)), G::i()), cfg).unwrap(),
        3 => {
            // a is a root of t^4 - 4t^3 + 5t^2 - 2t + 1 and b = i = -t^3 + 3t^2 - 3t + 1
            let k = field(&[1, -2, 5, -4, 1], "t");
            let a = AlgebraicNumber::generator(&k);
            let b = elt(&k, &[1, -3, 3, -1], 1);
            classify(&t3a_normal_form(a, b), cfg).unwrap()
        }
        4 => {
            // b: 3b^6 + 9b^4 + 6b^2 + 1 = 0, a = (3b^4 + 7b^2 - b + 3)/2
            let k = field(&[1, 0, 6, 0, 9, 0, 3], "b");
            let k = NumberField::new(k.modulus().monic(), "b");
            let b = AlgebraicNumber::generator(&k);
            let a = elt(&k, &[3, -1, 7, 0, 3], 2);
            classify(&t3a_normal_form(a, b), cfg).unwrap()
        }
        5 => {
            // b: b^8 + 8b^6 + 14b^4 + 7b^2 + 1 = 0, a = -(2b^6 + 15b^4 + 22b^2 + b + 5)/2
            let k = field(&[1, 0, 7, 0, 14, 0, 8, 0, 1], "b");
            let b = AlgebraicNumber::generator(&k);
            let a = elt(&k, &[-5, -1, -22, 0, -15, 0, -2], 2);
            classify(&t3a_normal_form(a, b), cfg).unwrap()
        }
        _ => panic!("no instance for p = {}", p),
    }
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}
