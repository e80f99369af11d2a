//! Property tests over random parameters, polynomials and inputs.

use std::collections::BTreeMap;

use biratlab::algebra::{largest_real_root, Field, GaussianRational, UniPoly};
use biratlab::classify::{classify, detect_branch, BranchTag, ClassifyConfig, GrowthKind};
use biratlab::cli::{parse_params, parse_ratfun, run_cli, ParamFile};
use biratlab::map::{build_map, MapParams, ProjPoint, QuadraticMap};
use biratlab::oracle::{check_recurrence, iterate_degrees, OracleConfig, RecurrenceVerdict};
use biratlab::spectral::{build_lists, char_poly};
use num_rational::BigRational;
use proptest::prelude::*;

type G = GaussianRational;

fn gaussian() -> impl Strategy<Value = G> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(a, b, c, d)| {
        G::new(BigRational::new(a.into(), b.into()), BigRational::new(c.into(), d.into()))
    })
}

fn triple() -> impl Strategy<Value = [i64; 3]> {
    prop::array::uniform3(-3i64..=3)
}

/// Valid, non-degenerate maps with small integer parameters.
fn valid_map() -> impl Strategy<Value = QuadraticMap<G>> {
    (triple(), triple(), triple()).prop_filter_map("invalid or degenerate", |(a, b, g)| {
        build_map(MapParams::from_ints(a, b, g)).ok().filter(|m| m.degeneracy_witness.is_none())
    })
}

fn point(c: [i64; 3]) -> Option<ProjPoint<G>> {
    ProjPoint::new(c.map(G::from_int)).ok()
}

fn expected_tag(p: &MapParams<G>) -> BranchTag {
    let (a1, a2) = (p.alpha[1].is_zero(), p.alpha[2].is_zero());
    let (g1, g2) = (p.gamma[1].is_zero(), p.gamma[2].is_zero());
    match (g1, g2, a1, a2) {
        (true, _, _, true) => BranchTag::T2a,
        (true, _, _, false) => BranchTag::T2b,
        (_, true, true, _) => BranchTag::T3a,
        (_, true, false, _) => BranchTag::T3b,
        (_, _, true, _) => BranchTag::T4a,
        (_, _, _, true) => BranchTag::T4b,
        _ => BranchTag::T1,
    }
}

fn fast_config() -> ClassifyConfig {
    ClassifyConfig { orbit_budget: 24, degree_cap: 256, depth_zero_entropy: 24, ..Default::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gaussian_field_axioms(a in gaussian(), b in gaussian(), c in gaussian()) {
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn scalar_display_parses_back(a in gaussian(), b in gaussian(), c in gaussian()) {
        let pf = ParamFile { alpha: [a.clone(), b.clone(), c.clone()], beta: [c.clone(), a.clone(), b.clone()], gamma: [b, c, a] };
        prop_assert_eq!(parse_params(&pf.render()).unwrap(), pf);
    }

    #[test]
    fn unipoly_gcd_divides(a in prop::collection::vec(-5i64..=5, 1..5), b in prop::collection::vec(-5i64..=5, 1..5), c in prop::collection::vec(-5i64..=5, 2..4)) {
        let (a, b, c): (UniPoly<BigRational>, UniPoly<BigRational>, UniPoly<BigRational>) =
            (UniPoly::from_i64s(&a), UniPoly::from_i64s(&b), UniPoly::from_i64s(&c));
        prop_assume!(!c.is_zero() && !a.is_zero() && !b.is_zero());
        let g = a.mul(&c).gcd(&b.mul(&c));
        prop_assert!(a.mul(&c).rem(&g).unwrap().is_zero());
        prop_assert!(g.rem(&c.monic()).unwrap().is_zero(), "common factor survives");
    }

    #[test]
    fn largest_root_of_integer_product(roots in prop::collection::vec(-9i64..=9, 1..5)) {
        let p = roots.iter().fold(UniPoly::from_i64s(&[1]), |acc, &r| acc.mul(&UniPoly::from_i64s(&[-r, 1])));
        let tol = BigRational::new(1.into(), 1_000_000_000_000i64.into());
        let r = largest_real_root(&p, &tol).unwrap();
        let want = BigRational::from_integer((*roots.iter().max().unwrap()).into());
        prop_assert!(r.lo <= want && want <= r.hi);
    }

    #[test]
    fn recurrence_of_generated_sequence(c in prop::collection::vec(-2i64..=2, 1..4), init in prop::collection::vec(1u64..5, 4)) {
        // d_{n+K} = -(c_0 d_n + ... + c_{K-1} d_{n+K-1}), kept nonnegative by construction
        let k = c.len();
        let mut coeffs = c.clone();
        coeffs.push(1);
        let poly = UniPoly::from_i64s(&coeffs);
        let mut seq: Vec<i64> = init[..k].iter().map(|&v| v as i64).collect();
        for n in 0..12 {
            let next = -(0..k).map(|i| c[i] * seq[n + i]).sum::<i64>();
            seq.push(next);
        }
        prop_assume!(seq.iter().all(|&v| (0..1 << 40).contains(&v)));
        let seq: Vec<u64> = seq.iter().map(|&v| v as u64).collect();
        prop_assert_eq!(check_recurrence(&seq, &poly, 4).unwrap(), RecurrenceVerdict::Holds { from: 1 });
    }

    #[test]
    fn lists_feed_the_polynomial_formula(lens in prop::array::uniform3(1usize..6), perm in 0usize..6, mask in 0u8..8) {
        // a partial injection seed -> terminal built from a permutation of {0,1,2}
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mut tau = BTreeMap::new();
        let mut lengths = BTreeMap::new();
        for s in 0..3 {
            if mask & (1 << s) != 0 {
                tau.insert(s, perms[perm][s]);
                lengths.insert(s, lens[s]);
            }
        }
        let lists = build_lists(&tau, &lengths).unwrap();
        let seen: usize = lists.iter().map(|l| l.seeds.len()).sum();
        prop_assert_eq!(seen, tau.len());
        prop_assert!(lists.iter().all(|l| (1..=3).contains(&l.seeds.len())));
        let total: usize = lists.iter().map(|l| l.total()).sum();
        let poly = char_poly(&lists).poly;
        prop_assert_eq!(poly.degree(), Some(1 + total));
        prop_assert!(poly.is_monic());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exceptional_lines_collapse(map in valid_map(), s in -4i64..=4, t in -4i64..=4) {
        let (_, a) = map.special_points().unwrap();
        let (lines, _) = map.exceptional_lines().unwrap();
        for i in 0..3 {
            let [p, q] = lines[i].spanning_points();
            let raw: [G; 3] = std::array::from_fn(|k| p[k].mul(&G::from_int(s)).add(&q[k].mul(&G::from_int(t))));
            let Ok(pt) = ProjPoint::new(raw) else { continue };
            if let Ok(img) = map.eval_point(&pt) {
                prop_assert_eq!(&img, &a[i]);
            }
        }
    }

    #[test]
    fn inverse_undoes_the_map(map in valid_map(), c in prop::array::uniform3(-7i64..=7)) {
        let Some(p) = point(c) else { return Ok(()) };
        let Ok(img) = map.eval_point(&p) else { return Ok(()) };
        if let Ok(back) = map.eval_inverse(&img) {
            prop_assert_eq!(back, p);
        }
    }

    #[test]
    fn special_points_ignore_common_scaling(a in triple(), b in triple(), g in triple(), k in 1i64..=4) {
        let Ok(m) = build_map(MapParams::from_ints(a, b, g)) else { return Ok(()) };
        prop_assume!(m.degeneracy_witness.is_none());
        let scaled = build_map(MapParams::from_ints(a, b.map(|v| v * k), g.map(|v| v * k))).unwrap();
        prop_assert_eq!(m.special_points().unwrap(), scaled.special_points().unwrap());
    }

    #[test]
    fn branch_tags_follow_the_zero_pattern(map in valid_map()) {
        let b = detect_branch(&map).unwrap();
        prop_assert_eq!(b.tag, expected_tag(&map.params));
    }

    #[test]
    fn degrees_start_at_two_and_at_most_double(map in valid_map()) {
        let seq = iterate_degrees(&map, &OracleConfig { depth: 8, degree_cap: 256, ..Default::default() });
        prop_assert_eq!(seq.degrees[0], 2);
        prop_assert!(seq.degrees.windows(2).all(|w| w[1] <= 2 * w[0]));
        prop_assert!(!seq.route_mismatch);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn growth_agrees_with_dynamical_degree(map in valid_map()) {
        let cfg = fast_config();
        let r = classify(&map, &cfg).unwrap();
        let exponential = matches!(r.growth.class.kind, GrowthKind::Exponential { .. });
        prop_assert_eq!(exponential, r.dynamical_degree.exceeds_one(&cfg.tol));
        prop_assert_eq!(r.zero_entropy, r.dynamical_degree.is_one(&cfg.tol));
        prop_assert_eq!(r.zero_entropy, !exponential);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn parse_params_never_panics(s in "\\PC{0,80}") {
        let _ = parse_params(&s);
    }

    #[test]
    fn parse_params_grammar_like_input(s in "(alpha|beta|gamma|x) ?= ?\\[[-0-9/i+, ]{0,20}\\]?(\n(alpha|beta|gamma) = \\[[-0-9/i+, ]{0,16}\\]){0,3}") {
        let _ = parse_params(&s);
    }

    #[test]
    fn parse_ratfun_never_panics(s in "[-+*/^() xyi0-9]{0,30}") {
        let _ = parse_ratfun(&s);
    }

    #[test]
    fn cli_exit_codes_partition(a in triple(), b in triple(), g in triple()) {
        let dir = std::env::temp_dir().join(format!("biratlab-prop-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(format!("{:?}{:?}{:?}.txt", a, b, g).replace(' ', ""));
        let pf = ParamFile::from_params(&MapParams::from_ints(a, b, g));
        std::fs::write(&path, pf.render()).unwrap();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let path_s = path.to_string_lossy().to_string();
        let code = run_cli(["biratlab", "classify", "--input", &path_s, "--degree-cap", "256", "--max-orbit", "24"], &mut out, &mut err);
        let _ = std::fs::remove_file(&path);
        prop_assert!([0, 2, 3, 4].contains(&code), "exit {}", code);
        let doc: serde_json::Value = serde_json::from_slice(&out).unwrap();
        prop_assert_eq!(doc["schema_version"].as_str(), Some("1"));
        let validity = doc["validity"].as_str().unwrap();
        let expect = match validity { "valid" => code == 0 || code == 4, "not_birational" | "degree_drop" => code == 2, "degenerate" => code == 3, _ => code == 4 };
        prop_assert!(expect, "{} with exit {}", validity, code);
    }
}
