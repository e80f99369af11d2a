//! Point blow-ups and forward orbits of the A_i on the blown-up surface.
//!
//! A point of the surface is a base point of P² plus, when the base is a
//! blow-up center, a tangent direction naming a point of its exceptional
//! fibre. Images are computed from first-order jets of F along lines.
//!
//! Exact orbit points of maps with dynamical degree above 1 grow in height
//! exponentially. Past a height cap the orbit is continued modulo a large
//! prime, and only through generic steps (ordinary points off every special
//! locus). A predicate that fails modulo p fails exactly, so a clean modular
//! tail certifies that no event happens; any other modular step is treated as
//! a suspected event and re-verified exactly.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::algebra::{restrict_to_line, AlgebraError, ExactField, Field, Fp, ModularContext};
use crate::map::{canonical, dot, proportional, MapError, ProjPoint, QuadraticMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlowupError {
    #[error("degenerate map")]
    DegenerateMap,
    #[error("map is not in the required branch")]
    WrongBranch,
    #[error("first-order jet does not determine the image")]
    JetOrderExceeded,
    #[error("point is an unresolved indeterminacy point")]
    UnresolvedIndeterminacy,
    #[error("direction is proportional to the base point")]
    DegenerateDirection,
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Reduce `dir` modulo the span of `base` (zeroing the coordinate where the
/// base is first nonzero) and canonicalize. None if `dir` is proportional to `base`.
pub fn reduce_direction<K: Field>(base: &[K; 3], dir: &[K; 3]) -> Option<[K; 3]> {
    let j = base.iter().position(|c| !c.is_zero())?;
    let s = dir[j].div(&base[j]).ok()?;
    let r: [K; 3] = std::array::from_fn(|i| dir[i].sub(&s.mul(&base[i])));
    canonical(&r)
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct InfNearPoint<K> {
    pub base: ProjPoint<K>,
    pub direction: Option<[K; 3]>,
}

impl<K: Field> InfNearPoint<K> {
    pub fn ordinary(base: ProjPoint<K>) -> Self {
        InfNearPoint { base, direction: None }
    }

    pub fn on_fibre(base: ProjPoint<K>, dir: &[K; 3]) -> Result<Self, BlowupError> {
        let d = reduce_direction(base.coords(), dir).ok_or(BlowupError::DegenerateDirection)?;
        Ok(InfNearPoint { base, direction: Some(d) })
    }

    pub fn is_ordinary(&self) -> bool {
        self.direction.is_none()
    }

    pub fn height_bits(&self) -> u64 {
        let b: u64 = self.base.coords().iter().map(|c| c.height_bits()).sum();
        b + self.direction.as_ref().map_or(0, |d| d.iter().map(|c| c.height_bits()).sum())
    }
}

impl<K: ExactField> InfNearPoint<K> {
    pub fn reduce(&self, ctx: &ModularContext) -> Option<InfNearPoint<Fp>> {
        let base = self.base.reduce(ctx)?;
        let direction = match &self.direction {
            None => None,
            Some(d) => Some([ctx.reduce(&d[0])?, ctx.reduce(&d[1])?, ctx.reduce(&d[2])?]),
        };
        Some(InfNearPoint { base, direction })
    }
}

impl<K: Field> fmt::Display for InfNearPoint<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.direction {
            None => write!(f, "{}", self.base),
            Some(d) => write!(f, "{}@[{}:{}:{}]", self.base, d[0], d[1], d[2]),
        }
    }
}

/// Blow-up centers: points of P², plus points of exceptional fibres that are
/// kept for bookkeeping only.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlowupRegistry<K> {
    pub centers: Vec<ProjPoint<K>>,
    pub second_order: Vec<InfNearPoint<K>>,
}

impl<K: Field> Default for BlowupRegistry<K> {
    fn default() -> Self {
        BlowupRegistry { centers: Vec::new(), second_order: Vec::new() }
    }
}

impl<K: Field> BlowupRegistry<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_center(&self, p: &ProjPoint<K>) -> bool {
        self.centers.contains(p)
    }

    pub fn blow_up(&mut self, p: &InfNearPoint<K>) {
        if p.is_ordinary() {
            if !self.is_center(&p.base) {
                self.centers.push(p.base.clone());
            }
        } else if !self.second_order.contains(p) {
            self.second_order.push(p.clone());
        }
    }

    pub fn blow_up_orbit(&mut self, rec: &OrbitRecord<K>) {
        for p in &rec.points {
            self.blow_up(p);
        }
    }
}

impl<K: ExactField> BlowupRegistry<K> {
    pub fn reduce(&self, ctx: &ModularContext) -> Option<BlowupRegistry<Fp>> {
        let centers: Option<Vec<_>> = self.centers.iter().map(|c| c.reduce(ctx)).collect();
        let second_order: Option<Vec<_>> = self.second_order.iter().map(|c| c.reduce(ctx)).collect();
        Some(BlowupRegistry { centers: centers?, second_order: second_order? })
    }
}

/// Direction of a curve `C0 + t C1 + ...` at C0: the first coefficient not
/// proportional to C0, reduced.
fn first_order_direction<K: Field>(curve: &crate::algebra::TCurve<K>, from: usize) -> Option<[K; 3]> {
    let c0 = curve.coeff_vector(0);
    (from..=curve.max_degree()).find_map(|j| {
        let cj = curve.coeff_vector(j);
        if proportional(&c0, &cj) {
            None
        } else {
            reduce_direction(&c0, &cj)
        }
    })
}

/// Image of a point of the blown-up surface.
pub fn extended_eval<K: Field>(
    map: &QuadraticMap<K>,
    reg: &BlowupRegistry<K>,
    p: &InfNearPoint<K>,
) -> Result<InfNearPoint<K>, BlowupError> {
    let sd = map.special().map_err(|_| BlowupError::DegenerateMap)?;
    let image = match &p.direction {
        Some(d) => {
            if !reg.is_center(&p.base) {
                return Err(BlowupError::UnresolvedIndeterminacy);
            }
            let curve = restrict_to_line(&map.components, p.base.coords(), d)?;
            let b = ProjPoint::new(curve.coeff_vector(0))?;
            if !reg.is_center(&b) {
                return Ok(InfNearPoint::ordinary(b));
            }
            if curve.stripped > 0 {
                // the image of an indeterminacy fibre landing on a center
                // depends on the curvature of the approach
                return Err(BlowupError::JetOrderExceeded);
            }
            let dir = first_order_direction(&curve, 1).ok_or(BlowupError::JetOrderExceeded)?;
            InfNearPoint { base: b, direction: Some(dir) }
        }
        None => {
            if reg.is_center(&p.base) {
                return Err(BlowupError::UnresolvedIndeterminacy);
            }
            let b = ProjPoint::new(map.eval_raw(p.base.coords())).map_err(|_| BlowupError::UnresolvedIndeterminacy)?;
            let collapsing = (0..3).find(|&k| p.base.lies_on(&sd.s[k]) && reg.is_center(&sd.a[k]));
            match collapsing {
                Some(k) => {
                    let one = map.unit();
                    let z = one.zero_like();
                    let line = sd.s[k].coeffs();
                    let w = (0..3)
                        .map(|i| {
                            let mut e = [z.clone(), z.clone(), z.clone()];
                            e[i] = one.clone();
                            e
                        })
                        .find(|e| !dot(line, e).is_zero())
                        .expect("a line has a transverse axis");
                    let curve = restrict_to_line(&map.components, p.base.coords(), &w)?;
                    let dir = first_order_direction(&curve, 1).ok_or(BlowupError::JetOrderExceeded)?;
                    InfNearPoint { base: b, direction: Some(dir) }
                }
                None => {
                    if reg.is_center(&b) {
                        return Err(BlowupError::UnresolvedIndeterminacy);
                    }
                    return Ok(InfNearPoint::ordinary(b));
                }
            }
        }
    };
    if reg.second_order.contains(&image) {
        return Err(BlowupError::JetOrderExceeded);
    }
    Ok(image)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CollapseReason {
    JetOrderExceeded,
    UnresolvedIndeterminacy,
    HeightLimit,
}

impl fmt::Display for CollapseReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CollapseReason::JetOrderExceeded => "jet_order_exceeded",
            CollapseReason::UnresolvedIndeterminacy => "unresolved_indeterminacy",
            CollapseReason::HeightLimit => "height_limit",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitOutcome {
    /// The point at `step` is the residual indeterminacy point O_target.
    HitIndeterminacy { target: usize, step: usize },
    /// The point at `step` repeats the one at `step - period`.
    Cycle { period: usize, step: usize },
    BudgetExhausted { steps: usize },
    Collapsed { step: usize, reason: CollapseReason },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRecord<K> {
    pub seed: usize,
    /// Exact orbit points; a modular tail is counted in `modular_steps`.
    pub points: Vec<InfNearPoint<K>>,
    pub outcome: OrbitOutcome,
    /// Steps at which the orbit sits on an exceptional line S_k whose image
    /// A_k is not blown up.
    pub singular_steps: Vec<usize>,
    /// Steps at which the orbit is a point of an exceptional fibre.
    pub fibre_steps: Vec<usize>,
    pub modular_steps: usize,
}

impl<K> OrbitRecord<K> {
    /// Singular elementary: ends on a residual indeterminacy point without
    /// meeting a collapsing curve on the way.
    pub fn is_se(&self) -> bool {
        matches!(self.outcome, OrbitOutcome::HitIndeterminacy { .. }) && self.singular_steps.is_empty()
    }

    pub fn hit(&self) -> Option<(usize, usize)> {
        match self.outcome {
            OrbitOutcome::HitIndeterminacy { target, step } => Some((target, step)),
            _ => None,
        }
    }

    /// Number of points from seed to terminal inclusive.
    pub fn cardinality(&self) -> usize {
        self.points.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrackOptions {
    pub budget: usize,
    /// Exact tracking switches to a modular tail above this height.
    pub height_cap: u64,
    /// Largest height allowed when re-verifying a suspected modular event.
    pub verify_cap: u64,
}

impl Default for TrackOptions {
    fn default() -> Self {
        TrackOptions { budget: 64, height_cap: 1 << 9, verify_cap: 1 << 18 }
    }
}

impl TrackOptions {
    pub fn with_budget(budget: usize) -> Self {
        TrackOptions { budget, ..Default::default() }
    }
}

struct Observation {
    hit: Option<usize>,
    singular: bool,
    special: bool,
}

fn observe<K: Field>(map: &QuadraticMap<K>, reg: &BlowupRegistry<K>, p: &InfNearPoint<K>) -> Observation {
    let sd = map.special().expect("non-degenerate");
    if !p.is_ordinary() {
        return Observation { hit: None, singular: false, special: true };
    }
    let hit = (0..3).find(|&j| sd.o[j] == p.base && !reg.is_center(&sd.o[j]));
    let on_lines: Vec<usize> = (0..3).filter(|&k| p.base.lies_on(&sd.s[k])).collect();
    let singular = hit.is_none() && on_lines.iter().any(|&k| !reg.is_center(&sd.a[k]));
    let special = hit.is_some() || !on_lines.is_empty() || reg.is_center(&p.base) || sd.o.contains(&p.base);
    Observation { hit, singular, special }
}

enum TailResult {
    Clean { steps: usize },
    Suspect,
}

/// Continue from an exact point modulo a prime, through generic steps only.
fn modular_tail<K: ExactField>(
    map: &QuadraticMap<K>,
    reg: &BlowupRegistry<K>,
    prefix: &[InfNearPoint<K>],
    step: usize,
    budget: usize,
) -> TailResult {
    let start = prefix.last().expect("nonempty prefix");
    if !start.is_ordinary() {
        return TailResult::Suspect;
    }
    for skip in 0..8 {
        let ctx = ModularContext::for_field(&map.unit(), skip);
        let (Some(mp), Some(rp)) = (map.reduce(&ctx), reg.reduce(&ctx)) else { continue };
        let seen: Option<HashSet<InfNearPoint<Fp>>> = prefix.iter().map(|q| q.reduce(&ctx)).collect();
        let Some(mut seen) = seen else { continue };
        let mut cur = start.reduce(&ctx).expect("prefix reduced");
        let mut s = step;
        while s < budget {
            let next = match extended_eval(&mp, &rp, &cur) {
                Ok(n) if n.is_ordinary() => n,
                _ => return TailResult::Suspect,
            };
            s += 1;
            let obs = observe(&mp, &rp, &next);
            if obs.special || !seen.insert(next.clone()) {
                return TailResult::Suspect;
            }
            cur = next;
        }
        return TailResult::Clean { steps: s - step };
    }
    TailResult::Suspect
}

/// Follow the orbit of `seed` under the extended map.
pub fn track_orbit<K: ExactField>(
    map: &QuadraticMap<K>,
    reg: &BlowupRegistry<K>,
    seed_index: usize,
    seed: InfNearPoint<K>,
    opts: &TrackOptions,
) -> OrbitRecord<K> {
    let mut rec = OrbitRecord {
        seed: seed_index,
        points: Vec::new(),
        outcome: OrbitOutcome::BudgetExhausted { steps: 0 },
        singular_steps: Vec::new(),
        fibre_steps: Vec::new(),
        modular_steps: 0,
    };
    let mut visited: HashMap<InfNearPoint<K>, usize> = HashMap::new();
    let mut cur = seed;
    let mut step = 0;
    let mut cap = opts.height_cap;
    let mut tail_tried = false;
    loop {
        let obs = observe(map, reg, &cur);
        if let Some(j) = obs.hit {
            rec.points.push(cur);
            rec.outcome = OrbitOutcome::HitIndeterminacy { target: j, step };
            break;
        }
        if let Some(&r) = visited.get(&cur) {
            rec.outcome = OrbitOutcome::Cycle { period: step - r, step };
            break;
        }
        visited.insert(cur.clone(), step);
        if obs.singular {
            rec.singular_steps.push(step);
        }
        if !cur.is_ordinary() {
            rec.fibre_steps.push(step);
        }
        rec.points.push(cur.clone());
        if step >= opts.budget {
            rec.outcome = OrbitOutcome::BudgetExhausted { steps: step };
            break;
        }
        if cur.height_bits() > cap {
            if !tail_tried {
                tail_tried = true;
                match modular_tail(map, reg, &rec.points, step, opts.budget) {
                    TailResult::Clean { steps } => {
                        rec.modular_steps = steps;
                        rec.outcome = OrbitOutcome::BudgetExhausted { steps: step + steps };
                        break;
                    }
                    TailResult::Suspect => cap = opts.verify_cap,
                }
            } else {
                rec.outcome = OrbitOutcome::Collapsed { step, reason: CollapseReason::HeightLimit };
                break;
            }
        }
        match extended_eval(map, reg, &cur) {
            Ok(n) => cur = n,
            Err(e) => {
                let reason = match e {
                    BlowupError::JetOrderExceeded => CollapseReason::JetOrderExceeded,
                    _ => CollapseReason::UnresolvedIndeterminacy,
                };
                rec.outcome = OrbitOutcome::Collapsed { step, reason };
                break;
            }
        }
        step += 1;
    }
    rec
}

/// Orbit of A_seed on the surface described by `reg`.
pub fn track_seed<K: ExactField>(
    map: &QuadraticMap<K>,
    reg: &BlowupRegistry<K>,
    seed: usize,
    opts: &TrackOptions,
) -> Result<OrbitRecord<K>, BlowupError> {
    let (_, a) = map.special_points().map_err(|_| BlowupError::DegenerateMap)?;
    Ok(track_orbit(map, reg, seed, InfNearPoint::ordinary(a[seed].clone()), opts))
}

/// Smallest k ≤ k_max with α1²(γ0+β2)(1+α1+…+α1^{k-1}) + α2β1 = 0.
pub fn condition_k<K: Field>(map: &QuadraticMap<K>, k_max: u32) -> Result<Option<u32>, BlowupError> {
    let (a, b, g) = (&map.params.alpha, &map.params.beta, &map.params.gamma);
    if !g[1].is_zero() || a[2].is_zero() {
        return Err(BlowupError::WrongBranch);
    }
    let lead = a[1].mul(&a[1]).mul(&g[0].add(&b[2]));
    let tail = a[2].mul(&b[1]);
    let mut geom = a[1].zero_like();
    let mut pw = a[1].one_like();
    for k in 1..=k_max {
        geom = geom.add(&pw);
        pw = pw.mul(&a[1]);
        if lead.mul(&geom).add(&tail).is_zero() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularizedModel<K> {
    pub registry: BlowupRegistry<K>,
    /// SE orbits in the order they were found.
    pub se_orbits: Vec<OrbitRecord<K>>,
    /// Final orbits of the seeds that are not SE.
    pub residual: Vec<OrbitRecord<K>>,
    /// Seed index to terminal indeterminacy index.
    pub tau: BTreeMap<usize, usize>,
    /// No residual orbit meets residual indeterminacy within the budget.
    pub as_certificate: bool,
    pub budget: usize,
}

impl<K> RegularizedModel<K> {
    pub fn se_orbit(&self, seed: usize) -> Option<&OrbitRecord<K>> {
        self.se_orbits.iter().find(|r| r.seed == seed)
    }

    pub fn residual_orbit(&self, seed: usize) -> Option<&OrbitRecord<K>> {
        self.residual.iter().find(|r| r.seed == seed)
    }

    pub fn collapsed(&self) -> Option<&OrbitRecord<K>> {
        self.residual.iter().find(|r| matches!(r.outcome, OrbitOutcome::Collapsed { .. }))
    }
}

/// Blow up SE orbits of the A_i until none is left.
///
/// Seeds with A_i ∈ I(F) are resolved first; then seeds are tracked in index
/// order and the first SE orbit found is blown up before everything is
/// re-tracked on the new surface.
pub fn regularize<K: ExactField>(map: &QuadraticMap<K>, opts: &TrackOptions) -> Result<RegularizedModel<K>, BlowupError> {
    let (o, a) = map.special_points().map_err(|_| BlowupError::DegenerateMap)?;
    let mut reg = BlowupRegistry::new();
    let mut se: Vec<OrbitRecord<K>> = Vec::new();
    let mut tau = BTreeMap::new();
    let mut record = |rec: OrbitRecord<K>, reg: &mut BlowupRegistry<K>, se: &mut Vec<OrbitRecord<K>>| {
        let (j, _) = rec.hit().expect("SE orbit");
        reg.blow_up_orbit(&rec);
        tau.insert(rec.seed, j);
        se.push(rec);
    };
    for i in 0..3 {
        if o.contains(&a[i]) && !reg.is_center(&a[i]) {
            let rec = track_seed(map, &reg, i, opts)?;
            if rec.is_se() {
                record(rec, &mut reg, &mut se);
            }
        }
    }
    let residual = loop {
        let mut residual = Vec::new();
        let mut found = None;
        for i in 0..3 {
            if se.iter().any(|r| r.seed == i) {
                continue;
            }
            let rec = track_seed(map, &reg, i, opts)?;
            if rec.is_se() {
                found = Some(rec);
                break;
            }
            residual.push(rec);
        }
        match found {
            Some(rec) => record(rec, &mut reg, &mut se),
            None => break residual,
        }
    };
    let as_certificate = residual
        .iter()
        .all(|r| matches!(r.outcome, OrbitOutcome::BudgetExhausted { .. } | OrbitOutcome::Cycle { .. }));
    Ok(RegularizedModel { registry: reg, se_orbits: se, residual, tau, as_certificate, budget: opts.budget })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GaussianRational;
    use crate::map::{build_map, MapParams};

    type G = GaussianRational;

    fn pt(a: [i64; 3]) -> ProjPoint<G> {
        ProjPoint::new(a.map(G::from_int)).unwrap()
    }

    fn map(a: [i64; 3], b: [i64; 3], g: [i64; 3]) -> QuadraticMap<G> {
        build_map(MapParams::from_ints(a, b, g)).unwrap()
    }

    #[test]
    fn lyness_a2_hits_o0() {
        let m = map([0, 0, 1], [1, 0, 1], [0, 1, 0]);
        let rec = track_seed(&m, &BlowupRegistry::new(), 2, &TrackOptions::with_budget(10)).unwrap();
        assert_eq!(rec.outcome, OrbitOutcome::HitIndeterminacy { target: 0, step: 1 });
        assert!(rec.is_se());
    }

    #[test]
    fn lyness_regularizes() {
        let m = map([0, 0, 1], [1, 0, 1], [0, 1, 0]);
        let r = regularize(&m, &TrackOptions::default()).unwrap();
        let tau: Vec<_> = r.tau.iter().map(|(a, b)| (*a, *b)).collect();
        assert_eq!(tau, vec![(0, 1), (1, 2), (2, 0)]);
        assert_eq!(r.se_orbit(0).unwrap().cardinality(), 1);
        assert_eq!(r.se_orbit(2).unwrap().cardinality(), 2);
        assert!(r.as_certificate);
    }

    #[test]
    fn fixed_a0_cycles() {
        let m = map([0, 1, 1], [1, 2, 1], [1, 1, 2]);
        let rec = track_seed(&m, &BlowupRegistry::new(), 0, &TrackOptions::with_budget(20)).unwrap();
        assert_eq!(rec.outcome, OrbitOutcome::Cycle { period: 1, step: 1 });
        assert!(!rec.is_se());
    }

    #[test]
    fn generic_a2_misses() {
        let m = map([0, 1, 1], [1, 2, 1], [1, 1, 2]);
        let rec = track_seed(&m, &BlowupRegistry::new(), 2, &TrackOptions::with_budget(20)).unwrap();
        assert_eq!(rec.outcome, OrbitOutcome::BudgetExhausted { steps: 20 });
    }

    #[test]
    fn generic_a2_misses_past_the_height_cap() {
        let m = map([0, 1, 1], [1, 2, 1], [1, 1, 2]);
        let rec = track_seed(&m, &BlowupRegistry::new(), 2, &TrackOptions::with_budget(64)).unwrap();
        assert_eq!(rec.outcome, OrbitOutcome::BudgetExhausted { steps: 64 });
        assert!(rec.modular_steps > 0);
    }

    #[test]
    fn condition_k_examples() {
        assert_eq!(condition_k(&map([0, 1, 1], [0, -1, 1], [0, 0, 1]), 10).unwrap(), Some(1));
        assert_eq!(condition_k(&map([0, 1, 1], [0, -2, 1], [0, 0, 1]), 10).unwrap(), Some(2));
        assert_eq!(condition_k(&map([0, 1, 1], [0, 1, 1], [-1, 0, 1]), 10).unwrap(), None);
        assert_eq!(condition_k(&map([0, 0, 1], [1, 0, 1], [0, 1, 0]), 10), Err(BlowupError::WrongBranch));
    }

    #[test]
    fn condition_k_orbit() {
        let m = map([0, 1, 1], [0, -1, 1], [0, 0, 1]);
        let mut reg = BlowupRegistry::new();
        reg.blow_up(&InfNearPoint::ordinary(pt([0, 1, 0])));
        let rec = track_seed(&m, &reg, 1, &TrackOptions::default()).unwrap();
        assert_eq!(rec.outcome, OrbitOutcome::HitIndeterminacy { target: 1, step: 2 });
        assert_eq!(rec.fibre_steps, vec![1]);
        assert!(rec.is_se());
    }

    #[test]
    fn ordinary_points_agree_with_eval() {
        let m = map([0, 1, 1], [1, 2, 1], [1, 1, 2]);
        let reg = BlowupRegistry::new();
        let p = pt([1, 3, 5]);
        let img = extended_eval(&m, &reg, &InfNearPoint::ordinary(p.clone())).unwrap();
        assert_eq!(img, InfNearPoint::ordinary(m.eval_point(&p).unwrap()));
    }

    #[test]
    fn direction_is_independent_of_lift() {
        let base = pt([1, 2, 3]);
        let d1 = [0, 1, 5].map(G::from_int);
        let d2: [G; 3] = std::array::from_fn(|i| d1[i].mul(&G::from_int(7)).add(&base.coords()[i].mul(&G::from_int(-4))));
        let a = InfNearPoint::on_fibre(base.clone(), &d1).unwrap();
        let b = InfNearPoint::on_fibre(base.clone(), &d2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.direction.as_ref().unwrap()[0], G::zero());
        assert!(InfNearPoint::on_fibre(base.clone(), base.coords()).is_err());
    }
}
