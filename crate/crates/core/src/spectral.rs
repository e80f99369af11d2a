//! Orbit lists and the characteristic polynomial of the blown-up map.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::UniPoly;
use crate::blowup::RegularizedModel;

pub type QPoly = UniPoly<BigRational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("inconsistent terminal assignment: {0}")]
    InconsistentTau(String),
    #[error("unknown polynomial family {0}")]
    UnknownFamily(String),
    #[error("index out of range for family {0}")]
    IndexOutOfRange(String),
}

/// A chain of SE orbits; the terminal of each orbit is the seed of the next.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitList {
    pub seeds: Vec<usize>,
    pub orbit_lengths: Vec<usize>,
    pub closed: bool,
}

impl OrbitList {
    pub fn total(&self) -> usize {
        self.orbit_lengths.iter().sum()
    }

    pub fn t_poly(&self) -> QPoly {
        let xn = QPoly::x_pow(self.total());
        if self.closed {
            xn.sub(&QPoly::from_i64s(&[1]))
        } else {
            xn
        }
    }

    pub fn s_poly(&self) -> QPoly {
        let n = &self.orbit_lengths;
        let big = self.total();
        let c = |k: i64| QPoly::from_i64s(&[k]);
        let xp = QPoly::x_pow;
        match (n.len(), self.closed) {
            (1, _) => c(1),
            (2, true) => xp(n[0]).add(&xp(n[1])).add(&c(2)),
            (2, false) => xp(n[0]).add(&xp(n[1])).add(&c(1)),
            (3, true) => n.iter().fold(c(3), |acc, &ni| acc.add(&xp(big - ni)).add(&xp(ni))),
            (3, false) => {
                let acc = n.iter().fold(c(1), |acc, &ni| acc.add(&xp(big - ni)));
                // the middle orbit of the chain is left out of the second sum
                acc.add(&xp(n[0])).add(&xp(n[2]))
            }
            _ => unreachable!("lists hold one to three orbits"),
        }
    }
}

/// Partition SE orbits into maximal chains. `tau` maps seed to terminal
/// index, `lengths` maps seed to orbit cardinality.
pub fn build_lists(
    tau: &BTreeMap<usize, usize>,
    lengths: &BTreeMap<usize, usize>,
) -> Result<Vec<OrbitList>, SpectralError> {
    let terminals: BTreeSet<usize> = tau.values().copied().collect();
    if terminals.len() != tau.len() {
        return Err(SpectralError::InconsistentTau("two orbits end at the same point".into()));
    }
    if tau.keys().chain(tau.values()).any(|&i| i > 2) {
        return Err(SpectralError::InconsistentTau("index outside 0..=2".into()));
    }
    let len_of = |s: usize| {
        lengths
            .get(&s)
            .copied()
            .filter(|&n| n > 0)
            .ok_or_else(|| SpectralError::InconsistentTau(format!("no orbit length for seed {}", s)))
    };
    let mut used = BTreeSet::new();
    let mut lists = Vec::new();
    let chain = |start: usize, used: &mut BTreeSet<usize>| -> Result<OrbitList, SpectralError> {
        let mut seeds = Vec::new();
        let mut cur = start;
        loop {
            seeds.push(cur);
            used.insert(cur);
            let next = tau[&cur];
            if next == start {
                break Ok(OrbitList { orbit_lengths: seeds.iter().map(|&s| len_of(s)).collect::<Result<_, _>>()?, seeds, closed: true });
            }
            if !tau.contains_key(&next) {
                break Ok(OrbitList { orbit_lengths: seeds.iter().map(|&s| len_of(s)).collect::<Result<_, _>>()?, seeds, closed: false });
            }
            cur = next;
        }
    };
    for &s in tau.keys() {
        if !terminals.contains(&s) {
            lists.push(chain(s, &mut used)?);
        }
    }
    if lists.len() > 1 {
        return Err(SpectralError::InconsistentTau("more than one open list".into()));
    }
    for &s in tau.keys() {
        if !used.contains(&s) {
            lists.push(chain(s, &mut used)?);
        }
    }
    Ok(lists)
}

pub fn lists_of_model<K>(model: &RegularizedModel<K>) -> Result<Vec<OrbitList>, SpectralError> {
    let lengths = model.se_orbits.iter().map(|r| (r.seed, r.cardinality())).collect();
    build_lists(&model.tau, &lengths)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListPolys {
    pub t: QPoly,
    pub s: QPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPolyResult {
    pub poly: QPoly,
    pub per_list: Vec<ListPolys>,
}

/// X = (x-2) ∏ T_L + (x-1) Σ_L S_L ∏_{L'≠L} T_L'.
pub fn char_poly(lists: &[OrbitList]) -> CharPolyResult {
    let per_list: Vec<ListPolys> = lists.iter().map(|l| ListPolys { t: l.t_poly(), s: l.s_poly() }).collect();
    let one = QPoly::from_i64s(&[1]);
    let prod = per_list.iter().fold(one.clone(), |acc, lp| acc.mul(&lp.t));
    let mut sum = QPoly::zero();
    for (i, lp) in per_list.iter().enumerate() {
        let others = per_list
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .fold(one.clone(), |acc, (_, o)| acc.mul(&o.t));
        sum = sum.add(&lp.s.mul(&others));
    }
    let poly = QPoly::from_i64s(&[-2, 1]).mul(&prod).add(&QPoly::from_i64s(&[-1, 1]).mul(&sum));
    CharPolyResult { poly, per_list }
}

/// The closed-form polynomials of the classification, by branch and index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "name", content = "indices")]
pub enum Family {
    /// No SE orbit: x - 2.
    Free,
    W(u32),
    XPer(u32),
    XLin,
    XP(u32),
    XK(u32),
    XKP(u32, u32),
    Golden,
    YP0(u32),
    Plastic,
    YP(u32),
    YQ(u32),
    ZP(u32),
    ZQ(u32),
    ZLin(Option<u32>),
}

fn xp(n: u32) -> QPoly {
    QPoly::x_pow(n as usize)
}

fn ints(c: &[i64]) -> QPoly {
    QPoly::from_i64s(c)
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Free => "free",
            Family::W(_) => "W_p",
            Family::XPer(_) => "X_per",
            Family::XLin => "X_lin",
            Family::XP(_) => "X_p",
            Family::XK(_) => "X_k",
            Family::XKP(..) => "X_kp",
            Family::Golden => "golden",
            Family::YP0(_) => "Y_p0",
            Family::Plastic => "plastic",
            Family::YP(_) => "Y_p",
            Family::YQ(_) => "Y_q",
            Family::ZP(_) => "Z_p",
            Family::ZQ(_) => "Z_q",
            Family::ZLin(_) => "Z_lin",
        }
    }

    pub fn indices(&self) -> Vec<u32> {
        match *self {
            Family::W(a) | Family::XPer(a) | Family::XP(a) | Family::XK(a) => vec![a],
            Family::YP0(a) | Family::YP(a) | Family::YQ(a) | Family::ZP(a) | Family::ZQ(a) => vec![a],
            Family::ZLin(Some(a)) => vec![a],
            Family::XKP(k, p) => vec![k, p],
            _ => vec![],
        }
    }

    /// Look up a family by name; index ranges follow the classification.
    pub fn parse(name: &str, idx: &[u32]) -> Result<Family, SpectralError> {
        let bad = || SpectralError::IndexOutOfRange(name.to_string());
        let one = |f: fn(u32) -> Family, min: u32| match idx {
            [a] if *a >= min => Ok(f(*a)),
            _ => Err(bad()),
        };
        let none = |f: Family| if idx.is_empty() { Ok(f) } else { Err(bad()) };
        match name {
            "free" => none(Family::Free),
            "W_p" => one(Family::W, 0),
            "X_per" => one(Family::XPer, 0),
            "X_lin" => none(Family::XLin),
            "X_p" => one(Family::XP, 0),
            "X_k" => one(Family::XK, 1),
            "X_kp" => match idx {
                [k, p] if *k >= 1 => Ok(Family::XKP(*k, *p)),
                _ => Err(bad()),
            },
            "golden" => none(Family::Golden),
            "Y_p0" => one(Family::YP0, 0),
            "plastic" => none(Family::Plastic),
            "Y_p" => one(Family::YP, 0),
            "Y_q" => one(Family::YQ, 2),
            "Z_p" => one(Family::ZP, 2),
            "Z_q" => one(Family::ZQ, 0),
            "Z_lin" => match idx {
                [] => Ok(Family::ZLin(None)),
                [p] => Ok(Family::ZLin(Some(*p))),
                _ => Err(bad()),
            },
            _ => Err(SpectralError::UnknownFamily(name.to_string())),
        }
    }

    pub fn poly(&self) -> QPoly {
        let golden = ints(&[-1, -1, 1]);
        let x1sq = ints(&[1, -2, 1]);
        match *self {
            Family::Free => ints(&[-2, 1]),
            Family::W(p) => xp(p + 2).sub(&xp(p + 1).mul(&ints(&[2]))).add(&ints(&[-1, 1])),
            Family::XPer(p) => xp(p + 1).add(&ints(&[1])).mul(&x1sq).mul(&ints(&[1, 1])),
            Family::XLin => x1sq.mul(&ints(&[1, 1])),
            Family::XP(p) => xp(p + 1).mul(&golden).add(&xp(2)),
            Family::XK(k) => xp(2 * k + 1).mul(&golden).add(&ints(&[1])),
            Family::XKP(k, p) => {
                let inner = xp(2 * k + 3).sub(&xp(2 * k + 2)).sub(&xp(2 * k + 1)).add(&ints(&[1]));
                xp(p + 1).mul(&inner).add(&xp(2 * k + 3)).add(&ints(&[1, -1, -1]))
            }
            Family::Golden => golden,
            Family::YP0(p) => xp(p + 1).mul(&ints(&[-1, -1, 0, 1])).add(&ints(&[-1, 0, 1, 1])),
            Family::Plastic => ints(&[-1, -1, 0, 1]),
            Family::YP(p) | Family::ZQ(p) => xp(p + 1).mul(&golden).add(&ints(&[-1, 0, 1])),
            Family::YQ(q) | Family::ZP(q) => xp(q + 1).mul(&golden).add(&xp(2)),
            Family::ZLin(Some(p)) => xp(p + 1).add(&ints(&[1])).mul(&x1sq),
            Family::ZLin(None) => x1sq,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx = self.indices();
        if idx.is_empty() {
            write!(f, "{}", self.name())
        } else {
            let s: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
            write!(f, "{}({})", self.name(), s.join(","))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau(p: &[(usize, usize)]) -> BTreeMap<usize, usize> {
        p.iter().copied().collect()
    }

    #[test]
    fn single_open_list() {
        let l = build_lists(&tau(&[(2, 0)]), &tau(&[(2, 3)])).unwrap();
        assert_eq!(l, vec![OrbitList { seeds: vec![2], orbit_lengths: vec![3], closed: false }]);
        assert_eq!(char_poly(&l).poly, ints(&[-1, 1, 0, -2, 1]));
        assert_eq!(char_poly(&l).poly, Family::W(2).poly());
    }

    #[test]
    fn two_closed_lists() {
        let l = build_lists(&tau(&[(0, 2), (2, 0), (1, 1)]), &tau(&[(0, 1), (1, 1), (2, 4)])).unwrap();
        assert_eq!(l.len(), 2);
        assert!(l.iter().all(|x| x.closed));
        assert_eq!(l[0].seeds, vec![0, 2]);
        assert_eq!(l[1].seeds, vec![1]);
    }

    #[test]
    fn one_closed_triple() {
        let l = build_lists(&tau(&[(0, 1), (1, 2), (2, 0)]), &tau(&[(0, 1), (1, 1), (2, 2)])).unwrap();
        assert_eq!(l.len(), 1);
        assert_eq!(l[0].orbit_lengths, vec![1, 1, 2]);
        assert_eq!(char_poly(&l).poly, ints(&[-1, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn open_chain_starts_at_free_seed() {
        let l = build_lists(&tau(&[(1, 2), (2, 0)]), &tau(&[(1, 1), (2, 5)])).unwrap();
        assert_eq!(l, vec![OrbitList { seeds: vec![1, 2], orbit_lengths: vec![1, 5], closed: false }]);
    }

    #[test]
    fn empty_gives_x_minus_two() {
        assert_eq!(char_poly(&[]).poly, ints(&[-2, 1]));
    }

    #[test]
    fn shared_terminal_rejected() {
        assert!(build_lists(&tau(&[(1, 0), (2, 0)]), &tau(&[(1, 1), (2, 1)])).is_err());
    }

    #[test]
    fn displayed_families() {
        assert_eq!(Family::YP0(1).poly(), ints(&[-1, 0, 0, 0, 0, 1]));
        assert_eq!(Family::XP(2).poly(), ints(&[0, 0, 1, -1, -1, 1]));
        assert_eq!(Family::XPer(0).poly(), ints(&[1, 0, -2, 0, 1]));
        assert_eq!(Family::XKP(1, 0).poly(), ints(&[1, 0, -1, 0, -1, 0, 1]));
    }

    #[test]
    fn parse_ranges() {
        assert_eq!(Family::parse("X_kp", &[1, 0]).unwrap(), Family::XKP(1, 0));
        assert!(matches!(Family::parse("Y_q", &[1]), Err(SpectralError::IndexOutOfRange(_))));
        assert!(matches!(Family::parse("Q_x", &[]), Err(SpectralError::UnknownFamily(_))));
        assert_eq!(Family::parse("Z_lin", &[]).unwrap(), Family::ZLin(None));
    }
}
