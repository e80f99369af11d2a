//! Branch dispatch, index detection, characteristic polynomial, dynamical
//! degree and growth class, reconciled with the degree oracle.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{largest_real_root, ExactField, RootApprox};
use crate::blowup::{
    condition_k, regularize, track_seed, BlowupError, BlowupRegistry, InfNearPoint, OrbitOutcome, OrbitRecord,
    RegularizedModel, TrackOptions,
};
use crate::fibration::{attachments, FibrationAttachment};
use crate::map::{MapError, QuadraticMap};
use crate::oracle::{
    affine_parity_fit, check_recurrence, iterate_degrees, map_period, rat_string, sequence_profile, DegreeSequence, OracleConfig,
    RecurrenceVerdict, SequenceProfile, Truncation, MAX_TRANSIENT,
};
use crate::spectral::{char_poly, lists_of_model, Family, OrbitList, QPoly, SpectralError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("degenerate map: {0}")]
    DegenerateMap(String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Blowup(#[from] BlowupError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("inconsistent orbit data: {0}")]
    Inconsistent(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BranchTag {
    T1,
    T2a,
    T2b,
    T3a,
    T3b,
    T4a,
    T4b,
}

impl fmt::Display for BranchTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremBranch {
    pub tag: BranchTag,
    pub p: Option<u32>,
    pub q: Option<u32>,
    pub k: Option<u32>,
}

impl TheoremBranch {
    fn bare(tag: BranchTag) -> Self {
        TheoremBranch { tag, p: None, q: None, k: None }
    }
}

/// Tag from the zero pattern of (α1, α2, γ1, γ2).
pub fn detect_branch<K: ExactField>(map: &QuadraticMap<K>) -> Result<TheoremBranch, ClassifyError> {
    if let Some(w) = &map.degeneracy_witness {
        return Err(ClassifyError::DegenerateMap(w.clone()));
    }
    let (a, g) = (&map.params.alpha, &map.params.gamma);
    let tag = if g[1].is_zero() {
        if a[2].is_zero() {
            BranchTag::T2a
        } else {
            BranchTag::T2b
        }
    } else if g[2].is_zero() {
        if a[1].is_zero() {
            BranchTag::T3a
        } else {
            BranchTag::T3b
        }
    } else if a[1].is_zero() {
        BranchTag::T4a
    } else if a[2].is_zero() {
        BranchTag::T4b
    } else {
        BranchTag::T1
    };
    Ok(TheoremBranch::bare(tag))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certainty {
    ProvedByFormula,
    EmpiricalWithinBudget,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GrowthKind {
    Periodic { period: usize },
    Bounded,
    Linear,
    Quadratic,
    Exponential { delta: String, interval: [String; 2] },
    Unresolved { diagnostic: String },
}

impl GrowthKind {
    pub fn label(&self) -> &'static str {
        match self {
            GrowthKind::Periodic { .. } => "periodic",
            GrowthKind::Bounded => "bounded",
            GrowthKind::Linear => "linear",
            GrowthKind::Quadratic => "quadratic",
            GrowthKind::Exponential { .. } => "exponential",
            GrowthKind::Unresolved { .. } => "unresolved",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthClass {
    #[serde(flatten)]
    pub kind: GrowthKind,
    pub certainty: Certainty,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DynamicalDegree {
    pub decimal: String,
    pub interval: [String; 2],
    #[serde(skip)]
    pub lo: BigRational,
    #[serde(skip)]
    pub hi: BigRational,
}

impl DynamicalDegree {
    fn from_root(r: RootApprox) -> Self {
        DynamicalDegree { decimal: r.decimal, interval: [rat_string(&r.lo), rat_string(&r.hi)], lo: r.lo, hi: r.hi }
    }

    /// δ > 1 + tol, decided on the isolating interval.
    pub fn exceeds_one(&self, tol: &BigRational) -> bool {
        let bound = BigRational::one() + tol;
        self.lo > bound || (self.hi > bound && (&self.lo + &self.hi) / BigRational::from_integer(2.into()) > bound)
    }

    pub fn is_one(&self, tol: &BigRational) -> bool {
        let one = BigRational::one();
        &self.lo - tol <= one && one <= &self.hi + tol
    }
}

pub fn default_tolerance() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u64.pow(12)))
}

/// Largest real root of the square-free part.
pub fn dynamical_degree(poly: &QPoly, tol: &BigRational) -> Result<DynamicalDegree, ClassifyError> {
    let sq = poly.squarefree_part();
    let r = largest_real_root(&sq, tol).map_err(|e| ClassifyError::Inconsistent(e.to_string()))?;
    Ok(DynamicalDegree::from_root(r))
}

/// Growth read off δ and the observed degree sequence alone.
pub fn growth_class(poly: &QPoly, seq: &[u64], tol: &BigRational) -> GrowthClass {
    let empirical = |kind| GrowthClass { kind, certainty: Certainty::EmpiricalWithinBudget };
    let dd = match dynamical_degree(poly, tol) {
        Ok(d) => d,
        Err(e) => return empirical(GrowthKind::Unresolved { diagnostic: e.to_string() }),
    };
    if dd.exceeds_one(tol) {
        return empirical(GrowthKind::Exponential { delta: dd.decimal, interval: dd.interval });
    }
    let kind = match sequence_profile(seq) {
        Ok(SequenceProfile::Periodic { period }) => GrowthKind::Periodic { period },
        Ok(SequenceProfile::Constant) | Ok(SequenceProfile::Bounded { .. }) => GrowthKind::Bounded,
        Ok(SequenceProfile::Linear { .. }) => GrowthKind::Linear,
        Ok(SequenceProfile::Quadratic { .. }) => GrowthKind::Quadratic,
        Ok(SequenceProfile::ExponentialEstimate { .. }) => {
            GrowthKind::Unresolved { diagnostic: "no periodic, linear or quadratic pattern in the observed window".into() }
        }
        Err(e) => GrowthKind::Unresolved { diagnostic: e.to_string() },
    };
    empirical(kind)
}

#[derive(Clone, Debug)]
pub struct ClassifyConfig {
    pub orbit_budget: usize,
    /// Oracle depth for δ > 1.
    pub depth_exponential: usize,
    /// Oracle depth for δ = 1.
    pub depth_zero_entropy: usize,
    pub degree_cap: u64,
    pub tol: BigRational,
    pub oracle_seed: u64,
    pub k_max: u32,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            orbit_budget: 64,
            depth_exponential: 12,
            depth_zero_entropy: 40,
            degree_cap: 4096,
            tol: default_tolerance(),
            oracle_seed: OracleConfig::default().seed,
            k_max: 32,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamsEcho {
    pub alpha: [String; 3],
    pub beta: [String; 3],
    pub gamma: [String; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitEvent {
    pub seed: usize,
    pub outcome: &'static str,
    pub steps: usize,
    pub hit_target: Option<usize>,
    pub cardinality: usize,
    pub singular_elementary: bool,
    pub modular_steps: usize,
    pub detail: Option<String>,
}

impl OrbitEvent {
    fn of<K>(r: &OrbitRecord<K>) -> Self {
        let (outcome, steps, hit_target, detail) = match r.outcome {
            OrbitOutcome::HitIndeterminacy { target, step } => ("hit", step, Some(target), None),
            OrbitOutcome::Cycle { period, step } => ("cycle", step, None, Some(format!("period {}", period))),
            OrbitOutcome::BudgetExhausted { steps } => ("budget_exhausted", steps, None, None),
            OrbitOutcome::Collapsed { step, reason } => ("collapsed", step, None, Some(reason.to_string())),
        };
        OrbitEvent {
            seed: r.seed,
            outcome,
            steps,
            hit_target,
            cardinality: r.cardinality(),
            singular_elementary: r.is_se(),
            modular_steps: r.modular_steps,
            detail,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharPolyReport {
    /// Integer coefficients, constant term first.
    pub coefficients: Vec<String>,
    pub text: String,
}

impl CharPolyReport {
    fn of(p: &QPoly) -> Self {
        let coefficients = match p.integer_coeffs() {
            Some(c) => c.iter().map(|v| v.to_string()).collect(),
            None => p.coeffs().iter().map(rat_string).collect(),
        };
        CharPolyReport { coefficients, text: p.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub family: String,
    pub poly: CharPolyReport,
    pub matches_char_poly: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthReport {
    #[serde(flatten)]
    pub class: GrowthClass,
    /// The classification's own wording for this cell.
    pub stated_rule: String,
    /// Growth read from δ and the oracle sequence alone.
    pub empirical: GrowthClass,
    pub consistent_with_oracle: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineFit {
    pub a: String,
    pub b: String,
    pub c: String,
    /// First 1-based index of the window the fit holds on.
    pub from: usize,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub degrees: Vec<u64>,
    pub truncated_by: Truncation,
    pub exact_terms: usize,
    pub route_mismatch: bool,
    pub recurrence: RecurrenceReport,
    pub profile: String,
    pub affine_fit: Option<AffineFit>,
    pub stated_display: Option<String>,
    /// Smallest n with F^n = id, when some d_n = 1.
    pub map_period: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum RecurrenceReport {
    Verdict(RecurrenceVerdict),
    Error { error: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionKReport {
    pub predicted: Option<u32>,
    pub observed: Option<u32>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Timings {
    pub orbits_ms: u128,
    pub oracle_ms: u128,
    pub total_ms: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub schema_version: &'static str,
    pub input: ParamsEcho,
    pub validity: &'static str,
    pub branch: TheoremBranch,
    pub indices_note: Option<String>,
    pub orbits: Vec<OrbitEvent>,
    pub tau: Vec<[usize; 2]>,
    pub as_certificate: bool,
    pub lists: Vec<OrbitList>,
    pub char_poly: CharPolyReport,
    pub family: Option<FamilyReport>,
    pub dynamical_degree: DynamicalDegree,
    pub growth: GrowthReport,
    pub zero_entropy: bool,
    pub oracle: OracleReport,
    pub condition_k: Option<ConditionKReport>,
    pub fibrations: Vec<FibrationAttachment>,
    pub notes: Vec<String>,
    pub unresolved: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl ClassificationReport {
    /// Exit status for the command line: 0 classified, 4 unresolved.
    pub fn exit_code(&self) -> i32 {
        if self.unresolved {
            4
        } else {
            0
        }
    }
}

fn hit_of<K>(model: &RegularizedModel<K>, seed: usize, target: usize) -> Option<u32> {
    model.se_orbit(seed).and_then(|r| r.hit()).filter(|&(t, _)| t == target).map(|(_, s)| s as u32)
}

/// Step at which A_seed reaches O_target on the surface with `centers` blown
/// up, ignoring whether the orbit meets a collapsing curve on the way.
fn raw_hit<K: ExactField>(
    map: &QuadraticMap<K>,
    centers: &[usize],
    seed: usize,
    target: usize,
    opts: &TrackOptions,
) -> Result<Option<u32>, ClassifyError> {
    let (_, a) = map.special_points()?;
    let mut reg = BlowupRegistry::new();
    for &c in centers {
        reg.blow_up(&InfNearPoint::ordinary(a[c].clone()));
    }
    let rec = track_seed(map, &reg, seed, opts)?;
    Ok(rec.hit().filter(|&(t, _)| t == target).map(|(_, s)| s as u32))
}

struct Cell {
    family: Family,
    rule: String,
    stated: Option<GrowthKind>,
    /// The stated rule leaves a disjunction; resolve with the oracle.
    ambiguous: bool,
    /// Periodic, period left to the oracle.
    periodic_unknown_period: bool,
    display: Option<String>,
}

impl Cell {
    fn new(family: Family, rule: &str, stated: Option<GrowthKind>) -> Self {
        Cell { family, rule: rule.to_string(), stated, ambiguous: false, periodic_unknown_period: false, display: None }
    }
}

fn exp_placeholder() -> GrowthKind {
    GrowthKind::Exponential { delta: String::new(), interval: [String::new(), String::new()] }
}

const LINEAR_DISPLAY: &str = "d_n = -1 + 2n";

/// Family and stated growth for a branch with detected indices.
fn cell_of(b: &TheoremBranch) -> Cell {
    use GrowthKind::*;
    let e = exp_placeholder;
    match (b.tag, b.p, b.q, b.k) {
        (BranchTag::T1, Some(p), _, _) => Cell::new(Family::W(p), "exponential (delta > 1); the cell is also worded as quadratic growth", Some(e())),
        (BranchTag::T1, None, _, _) => Cell::new(Family::Free, "delta = 2, exponential; the cell is also worded as quadratic growth", Some(e())),
        (BranchTag::T2a, Some(p), _, _) => Cell::new(
            Family::XPer(p),
            &format!("periodic with period {}", 2 * p + 2),
            Some(Periodic { period: 2 * p as usize + 2 }),
        ),
        (BranchTag::T2a, None, _, _) => Cell {
            display: Some("d_n = 5/4 + n/2 - (-1)^n/4".into()),
            ..Cell::new(Family::XLin, "linear", Some(Linear))
        },
        (BranchTag::T2b, p, _, Some(k)) => match p {
            None => Cell::new(Family::XK(k), "exponential", Some(e())),
            Some(p) => {
                let fam = Family::XKP(k, p);
                if p * k > 2 * (1 + k) {
                    Cell::new(fam, "exponential (p > 2(1+k)/k)", Some(e()))
                } else if (p, k) == (3, 2) || (p, k) == (4, 1) {
                    Cell { ambiguous: true, ..Cell::new(fam, "periodic or quadratic", None) }
                } else {
                    Cell { periodic_unknown_period: true, ..Cell::new(fam, "periodic", None) }
                }
            }
        },
        (BranchTag::T2b, Some(p), _, None) => match p {
            0 => Cell { display: Some("d_{n+3} = d_n".into()), ..Cell::new(Family::XP(0), "bounded", Some(Bounded)) },
            1 => Cell { display: Some("d_{n+4} = d_{n+3}".into()), ..Cell::new(Family::XP(1), "bounded", Some(Bounded)) },
            2 => Cell { display: Some(LINEAR_DISPLAY.into()), ..Cell::new(Family::XP(2), "linear", Some(Linear)) },
            _ => Cell::new(Family::XP(p), "exponential", Some(e())),
        },
        (BranchTag::T2b, None, _, None) => Cell::new(Family::Golden, "exponential, delta = golden mean", Some(e())),
        (BranchTag::T3a, Some(p), _, _) => {
            const PERIODS: [usize; 6] = [6, 5, 8, 12, 18, 30];
            match p {
                0..=5 => {
                    let period = PERIODS[p as usize];
                    Cell::new(Family::YP0(p), &format!("periodic with period {}", period), Some(Periodic { period }))
                }
                6 => Cell { ambiguous: true, ..Cell::new(Family::YP0(6), "quadratic or periodic with period 30", None) },
                _ => Cell::new(Family::YP0(p), "exponential", Some(e())),
            }
        }
        (BranchTag::T3a, None, _, _) => Cell::new(Family::Plastic, "exponential, delta = plastic number", Some(e())),
        (BranchTag::T3b, Some(p), _, _) => Cell::new(Family::YP(p), "exponential", Some(e())),
        (BranchTag::T3b, None, Some(q), _) => {
            if q == 2 {
                Cell { display: Some(LINEAR_DISPLAY.into()), ..Cell::new(Family::YQ(2), "linear", Some(Linear)) }
            } else {
                Cell::new(Family::YQ(q), "exponential", Some(e()))
            }
        }
        (BranchTag::T3b, None, None, _) => Cell::new(Family::Golden, "exponential, delta = golden mean", Some(e())),
        (BranchTag::T4a, p, q, _) => match (p, q) {
            (Some(p), Some(q)) if q < p => Cell::new(Family::ZQ(q), "exponential", Some(e())),
            (_, Some(q)) if p.is_none() => Cell::new(Family::ZQ(q), "exponential", Some(e())),
            (Some(2), _) => Cell { display: Some(LINEAR_DISPLAY.into()), ..Cell::new(Family::ZP(2), "linear", Some(Linear)) },
            (Some(p), _) => Cell::new(Family::ZP(p), "exponential", Some(e())),
            _ => Cell::new(Family::Golden, "exponential, delta = golden mean", Some(e())),
        },
        (BranchTag::T4b, p, _, _) => Cell::new(Family::ZLin(p), "linear", Some(Linear)),
    }
}

fn detect_indices<K: ExactField>(
    map: &QuadraticMap<K>,
    model: &RegularizedModel<K>,
    branch: &mut TheoremBranch,
    opts: &TrackOptions,
    notes: &mut Vec<String>,
) -> Result<(), ClassifyError> {
    match branch.tag {
        BranchTag::T1 | BranchTag::T2a | BranchTag::T3a | BranchTag::T4b => {
            branch.p = hit_of(model, 2, 0);
        }
        BranchTag::T2b => {
            branch.p = hit_of(model, 2, 0);
            if let Some(s) = hit_of(model, 1, 1) {
                if s % 2 == 0 && s > 0 {
                    branch.k = Some(s / 2);
                } else {
                    notes.push(format!("A_1 reaches O_1 after an odd number of steps ({})", s));
                }
            }
        }
        BranchTag::T3b => {
            branch.p = hit_of(model, 2, 0);
            branch.q = hit_of(model, 2, 1);
            if let Some(q) = branch.q {
                if q < 2 {
                    return Err(ClassifyError::Inconsistent(format!("T3b orbit reaches O_1 with q = {}", q)));
                }
            }
        }
        BranchTag::T4a => {
            let p = raw_hit(map, &[0], 1, 0, opts)?;
            let q = raw_hit(map, &[0], 2, 0, opts)?;
            if let (Some(p), Some(q)) = (p, q) {
                if p == q {
                    return Err(ClassifyError::Inconsistent(format!("T4a orbits of A_1 and A_2 both reach O_0 at step {}", p)));
                }
            }
            if let Some(p) = p {
                if p < 2 {
                    return Err(ClassifyError::Inconsistent(format!("T4a orbit of A_1 reaches O_0 with p = {}", p)));
                }
            }
            branch.p = p;
            branch.q = q;
        }
    }
    Ok(())
}

fn oracle_profile_text(seq: &[u64]) -> String {
    match sequence_profile(seq) {
        Ok(SequenceProfile::Periodic { period }) => format!("periodic, period {}", period),
        Ok(SequenceProfile::Constant) => "eventually constant".into(),
        Ok(SequenceProfile::Bounded { period }) => format!("eventually periodic, period {}", period),
        Ok(SequenceProfile::Linear { lag }) => format!("linear, lag {}", lag),
        Ok(SequenceProfile::Quadratic { lag }) => format!("quadratic, lag {}", lag),
        Ok(SequenceProfile::ExponentialEstimate { .. }) => "growing faster than quadratic".into(),
        Err(e) => e.to_string(),
    }
}

fn fit_report(seq: &[u64]) -> Option<AffineFit> {
    let n = seq.len();
    (0..=MAX_TRANSIENT).find_map(|skip| {
        let window = n.checked_sub(skip)?;
        let (a, b, c) = affine_parity_fit(seq, window)?;
        let text = format!("d_n = {} + ({})n + ({})(-1)^n", rat_string(&a), rat_string(&b), rat_string(&c));
        Some(AffineFit { a: rat_string(&a), b: rat_string(&b), c: rat_string(&c), from: skip + 1, text })
    })
}

/// A periodic class of period T agrees with any degree period dividing T.
fn growth_matches(stated: &GrowthKind, empirical: &GrowthKind) -> bool {
    match (stated, empirical) {
        (GrowthKind::Exponential { .. }, GrowthKind::Exponential { .. }) => true,
        (GrowthKind::Periodic { period: a }, GrowthKind::Periodic { period: b }) => a % b == 0,
        (GrowthKind::Bounded, GrowthKind::Bounded | GrowthKind::Periodic { .. }) => true,
        (a, b) => a == b,
    }
}

pub fn classify<K: ExactField>(map: &QuadraticMap<K>, cfg: &ClassifyConfig) -> Result<ClassificationReport, ClassifyError> {
    let t0 = std::time::Instant::now();
    let mut branch = detect_branch(map)?;
    let mut notes = Vec::new();
    let opts = TrackOptions::with_budget(cfg.orbit_budget);
    let model = regularize(map, &opts)?;
    detect_indices(map, &model, &mut branch, &opts, &mut notes)?;
    let lists = lists_of_model(&model)?;
    let cp = char_poly(&lists).poly;
    let t_orbits = t0.elapsed();

    let cond_k = if branch.tag == BranchTag::T2b {
        let predicted = condition_k(map, cfg.k_max)?;
        let agree = predicted == branch.k;
        if !agree {
            notes.push(format!("condition_k predicts {:?}, orbit shows {:?}", predicted, branch.k));
        }
        Some(ConditionKReport { predicted, observed: branch.k, agree })
    } else {
        None
    };

    let collapsed = model.collapsed().is_some();
    let no_hit_by_budget = model.residual.iter().any(|r| matches!(r.outcome, OrbitOutcome::BudgetExhausted { .. }));
    if collapsed {
        notes.push("an orbit collapsed before reaching an indeterminacy point; certainty downgraded".into());
    }

    let cell = cell_of(&branch);
    let fam_poly = cell.family.poly();
    let family_match = fam_poly == cp;
    if !family_match {
        notes.push(format!("orbit lists give {} but the detected cell predicts {}", cp, fam_poly));
    }
    if branch.tag == BranchTag::T1 {
        notes.push("T1 is also worded as quadratic growth of d_n; delta > 1 forces exponential growth, which is reported".into());
    }

    let dd = dynamical_degree(&cp, &cfg.tol)?;
    let exponential = dd.exceeds_one(&cfg.tol);
    let zero_entropy = dd.is_one(&cfg.tol);

    // δ = 1 sequences are cheap; make the window long enough to see the stated period twice.
    let stated_period = match cell.stated {
        Some(GrowthKind::Periodic { period }) => period,
        _ if cell.ambiguous => 30,
        _ => 0,
    };
    let cp_degree = cp.degree().unwrap_or(0);
    let depth = if exponential {
        cfg.depth_exponential.max(cp_degree + MAX_TRANSIENT + 2)
    } else {
        cfg.depth_zero_entropy.max(2 * stated_period + 2 * MAX_TRANSIENT).max(cp_degree + MAX_TRANSIENT + 2)
    };
    let ocfg = OracleConfig { depth, degree_cap: cfg.degree_cap, seed: cfg.oracle_seed, ..Default::default() };
    let t1 = std::time::Instant::now();
    let seq: DegreeSequence = iterate_degrees(map, &ocfg);
    let t_oracle = t1.elapsed();
    if seq.route_mismatch {
        notes.push("line route disagreed with exact composition on the prefix".into());
    }
    let period_of_map = if exponential { None } else { map_period(map, &seq.degrees, cfg.oracle_seed) };
    let recurrence = match check_recurrence(&seq.degrees, &cp, MAX_TRANSIENT) {
        Ok(v) => RecurrenceReport::Verdict(v),
        Err(e) => RecurrenceReport::Error { error: e.to_string() },
    };

    let empirical = growth_class(&cp, &seq.degrees, &cfg.tol);
    let exp_kind = || GrowthKind::Exponential { delta: dd.decimal.clone(), interval: dd.interval.clone() };
    let downgraded = collapsed || !family_match;
    let mut certainty = if downgraded || no_hit_by_budget { Certainty::EmpiricalWithinBudget } else { Certainty::ProvedByFormula };
    let kind = if downgraded {
        empirical.kind.clone()
    } else if cell.ambiguous {
        certainty = Certainty::EmpiricalWithinBudget;
        notes.push(format!("stated rule leaves '{}'; resolved by the oracle", cell.rule));
        empirical.kind.clone()
    } else if cell.periodic_unknown_period {
        match &empirical.kind {
            GrowthKind::Periodic { period } => GrowthKind::Periodic { period: period_of_map.unwrap_or(*period) },
            other => {
                notes.push(format!("stated periodic, oracle shows {}", other.label()));
                GrowthKind::Unresolved { diagnostic: "stated periodic, no period observed".into() }
            }
        }
    } else {
        match cell.stated.clone().expect("unambiguous cell has a stated growth") {
            GrowthKind::Exponential { .. } => exp_kind(),
            k => k,
        }
    };
    // δ > 1 exactly when the class is exponential.
    let kind = match (&kind, exponential) {
        (GrowthKind::Exponential { .. }, false) | (GrowthKind::Periodic { .. } | GrowthKind::Bounded | GrowthKind::Linear | GrowthKind::Quadratic, true) => {
            notes.push(format!("stated {} conflicts with delta = {}; reporting the oracle class", kind.label(), dd.decimal));
            certainty = Certainty::EmpiricalWithinBudget;
            empirical.kind.clone()
        }
        _ => kind,
    };
    let consistent = growth_matches(&kind, &empirical.kind);
    if let (GrowthKind::Periodic { period }, Some(m)) = (&kind, period_of_map) {
        if *period != m {
            notes.push(format!("degree period {} differs from the period of the map itself, F^{} = id", period, m));
        }
    }
    if !consistent {
        notes.push(format!("oracle shows {} where {} is reported", oracle_profile_text(&seq.degrees), kind.label()));
    }
    let unresolved = collapsed || matches!(kind, GrowthKind::Unresolved { .. });

    let fit = if exponential { None } else { fit_report(&seq.degrees) };
    let indices_note = (branch.p.is_none() && branch.q.is_none() && branch.k.is_none())
        .then(|| format!("none within budget {}", cfg.orbit_budget));
    let echo = |v: &[K; 3]| -> [String; 3] { std::array::from_fn(|i| v[i].to_string()) };
    let mut orbits: Vec<OrbitEvent> = model.se_orbits.iter().chain(model.residual.iter()).map(OrbitEvent::of).collect();
    orbits.sort_by_key(|o| o.seed);

    Ok(ClassificationReport {
        schema_version: "1",
        input: ParamsEcho { alpha: echo(&map.params.alpha), beta: echo(&map.params.beta), gamma: echo(&map.params.gamma) },
        validity: "valid",
        branch,
        indices_note,
        orbits,
        tau: model.tau.iter().map(|(a, b)| [*a, *b]).collect(),
        as_certificate: model.as_certificate,
        lists,
        char_poly: CharPolyReport::of(&cp),
        family: Some(FamilyReport {
            family: cell.family.to_string(),
            poly: CharPolyReport::of(&fam_poly),
            matches_char_poly: family_match,
        }),
        dynamical_degree: dd,
        growth: GrowthReport {
            class: GrowthClass { kind, certainty },
            stated_rule: cell.rule,
            empirical,
            consistent_with_oracle: consistent,
        },
        zero_entropy,
        oracle: OracleReport {
            degrees: seq.degrees.clone(),
            truncated_by: seq.truncated_by,
            exact_terms: seq.exact_terms,
            route_mismatch: seq.route_mismatch,
            recurrence,
            profile: oracle_profile_text(&seq.degrees),
            affine_fit: fit,
            stated_display: cell.display,
            map_period: period_of_map,
        },
        condition_k: cond_k,
        fibrations: attachments(map),
        notes,
        unresolved,
        timings: Some(Timings {
            orbits_ms: t_orbits.as_millis(),
            oracle_ms: t_oracle.as_millis(),
            total_ms: t0.elapsed().as_millis(),
        }),
    })
}

/// δ as a float, for diagnostics only.
pub fn delta_f64(d: &DynamicalDegree) -> Option<f64> {
    ((&d.lo + &d.hi) / BigRational::from_integer(2.into())).to_f64()
}
