//! A member of the family `f(x,y) = (α·(1,x,y), β·(1,x,y) / γ·(1,x,y))`,
//! its projective extension, inverse, indeterminacy points and exceptional
//! lines.

use std::fmt;

use thiserror::Error;

use crate::algebra::{BiPoly, ExactField, Field, Fp, GaussianRational, HomogeneousPoly3, ModularContext};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("not birational: {0}")]
    NotBirational(String),
    #[error("components share a common factor of degree {0}")]
    DegreeDrop(u32),
    #[error("degenerate map: {0}")]
    DegenerateMap(String),
    #[error("point is an indeterminacy point")]
    IndeterminatePoint,
    #[error("zero coordinate vector")]
    ZeroVector,
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

/// `u_i v_j - u_j v_i`
pub fn minor<K: Field>(u: &[K; 3], v: &[K; 3], i: usize, j: usize) -> K {
    u[i].mul(&v[j]).sub(&u[j].mul(&v[i]))
}

pub fn dot<K: Field>(u: &[K; 3], v: &[K; 3]) -> K {
    u[0].mul(&v[0]).add(&u[1].mul(&v[1])).add(&u[2].mul(&v[2]))
}

pub fn cross<K: Field>(u: &[K; 3], v: &[K; 3]) -> [K; 3] {
    [minor(u, v, 1, 2), minor(u, v, 2, 0), minor(u, v, 0, 1)]
}

pub fn is_zero_vec<K: Field>(u: &[K; 3]) -> bool {
    u.iter().all(|c| c.is_zero())
}

/// Parallel as vectors (the zero vector is parallel to everything).
pub fn proportional<K: Field>(u: &[K; 3], v: &[K; 3]) -> bool {
    is_zero_vec(&cross(u, v))
}

/// Scale so the first nonzero coordinate is 1.
pub fn canonical<K: Field>(u: &[K; 3]) -> Option<[K; 3]> {
    let lead = u.iter().find(|c| !c.is_zero())?;
    let s = lead.inv().ok()?;
    Some(std::array::from_fn(|i| u[i].mul(&s)))
}

/// A point of P² in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjPoint<K> {
    coords: [K; 3],
}

impl<K: Field> ProjPoint<K> {
    pub fn new(raw: [K; 3]) -> Result<Self, MapError> {
        canonical(&raw).map(|coords| ProjPoint { coords }).ok_or(MapError::ZeroVector)
    }

    pub fn coords(&self) -> &[K; 3] {
        &self.coords
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> ProjPoint<L> {
        ProjPoint { coords: std::array::from_fn(|i| f(&self.coords[i])) }
    }

    pub fn lies_on(&self, l: &ProjLine<K>) -> bool {
        dot(&self.coords, &l.coeffs).is_zero()
    }
}

impl<K: ExactField> ProjPoint<K> {
    /// Canonical form survives reduction (the leading 1 stays 1).
    pub fn reduce(&self, ctx: &ModularContext) -> Option<ProjPoint<Fp>> {
        let c: Option<Vec<Fp>> = self.coords.iter().map(|x| ctx.reduce(x)).collect();
        let c = c?;
        Some(ProjPoint { coords: [c[0], c[1], c[2]] })
    }
}

impl<K: Field> fmt::Display for ProjPoint<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}]", self.coords[0], self.coords[1], self.coords[2])
    }
}

/// The line `c0 x0 + c1 x1 + c2 x2 = 0`, canonicalized like a point.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjLine<K> {
    coeffs: [K; 3],
}

impl<K: Field> ProjLine<K> {
    pub fn new(raw: [K; 3]) -> Result<Self, MapError> {
        canonical(&raw).map(|coeffs| ProjLine { coeffs }).ok_or(MapError::ZeroVector)
    }

    pub fn coeffs(&self) -> &[K; 3] {
        &self.coeffs
    }

    pub fn intersection(&self, o: &Self) -> Option<ProjPoint<K>> {
        ProjPoint::new(cross(&self.coeffs, &o.coeffs)).ok()
    }

    /// Two independent points spanning the line.
    pub fn spanning_points(&self) -> [[K; 3]; 2] {
        let c = &self.coeffs;
        let z = c[0].zero_like();
        let one = c[0].one_like();
        // c is canonical: its first nonzero entry is 1
        let k = c.iter().position(|x| !x.is_zero()).unwrap();
        let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
        std::array::from_fn(|n| {
            let j = others[n];
            let mut v = [z.clone(), z.clone(), z.clone()];
            v[j] = one.clone();
            v[k] = c[j].neg();
            v
        })
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> ProjLine<L> {
        ProjLine { coeffs: std::array::from_fn(|i| f(&self.coeffs[i])) }
    }
}

impl<K: ExactField> ProjLine<K> {
    pub fn reduce(&self, ctx: &ModularContext) -> Option<ProjLine<Fp>> {
        let c: Option<Vec<Fp>> = self.coeffs.iter().map(|x| ctx.reduce(x)).collect();
        let c = c?;
        Some(ProjLine { coeffs: [c[0], c[1], c[2]] })
    }
}

impl<K: Field> fmt::Display for ProjLine<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}*x0 + {}*x1 + {}*x2 = 0}}", self.coeffs[0], self.coeffs[1], self.coeffs[2])
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MapParams<K> {
    pub alpha: [K; 3],
    pub beta: [K; 3],
    pub gamma: [K; 3],
}

impl MapParams<GaussianRational> {
    pub fn from_ints(alpha: [i64; 3], beta: [i64; 3], gamma: [i64; 3]) -> Self {
        let g = |a: [i64; 3]| a.map(GaussianRational::from_int);
        MapParams { alpha: g(alpha), beta: g(beta), gamma: g(gamma) }
    }
}

impl<K: Field> MapParams<K> {
    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> MapParams<L> {
        let m = |a: &[K; 3]| std::array::from_fn(|i| f(&a[i]));
        MapParams { alpha: m(&self.alpha), beta: m(&self.beta), gamma: m(&self.gamma) }
    }

    /// Any coefficient, used to produce constants of the same field.
    pub fn unit(&self) -> K {
        self.alpha[0].one_like()
    }
}

impl<K: Field> fmt::Display for MapParams<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = |a: &[K; 3]| format!("[{}, {}, {}]", a[0], a[1], a[2]);
        write!(f, "alpha = {}\nbeta = {}\ngamma = {}", t(&self.alpha), t(&self.beta), t(&self.gamma))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Indeterminacy points, their images, and the exceptional lines of F and F^{-1}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpecialData<K> {
    pub o: [ProjPoint<K>; 3],
    pub a: [ProjPoint<K>; 3],
    pub s: [ProjLine<K>; 3],
    pub t: [ProjLine<K>; 3],
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadraticMap<K> {
    pub params: MapParams<K>,
    pub components: [HomogeneousPoly3<K>; 3],
    pub inverse_components: [HomogeneousPoly3<K>; 3],
    pub degenerate: bool,
    pub degeneracy_witness: Option<String>,
    special: Option<SpecialData<K>>,
}

fn projective_components<K: Field>(p: &MapParams<K>) -> [HomogeneousPoly3<K>; 3] {
    let one = p.unit();
    let x0 = HomogeneousPoly3::var(0, &one);
    let la = HomogeneousPoly3::linear(&p.alpha);
    let lb = HomogeneousPoly3::linear(&p.beta);
    let lg = HomogeneousPoly3::linear(&p.gamma);
    [x0.mul(&lg), la.mul(&lg), x0.mul(&lb)]
}

fn inverse_components<K: Field>(p: &MapParams<K>) -> [HomogeneousPoly3<K>; 3] {
    let (a, b, g) = (&p.alpha, &p.beta, &p.gamma);
    let q = |terms: Vec<([u32; 3], K)>| HomogeneousPoly3::from_terms(2, terms).expect("degree 2 terms");
    let ab = |i, j| minor(a, b, i, j);
    let ag = |i, j| minor(a, g, i, j);
    [
        q(vec![([2, 0, 0], ab(1, 2)), ([1, 0, 1], ag(1, 2).neg())]),
        q(vec![
            ([2, 0, 0], ab(0, 2).neg()),
            ([1, 1, 0], b[2].clone()),
            ([1, 0, 1], ag(0, 2)),
            ([0, 1, 1], g[2].neg()),
        ]),
        q(vec![
            ([2, 0, 0], ab(0, 1)),
            ([1, 1, 0], b[1].neg()),
            ([1, 0, 1], ag(1, 0)),
            ([0, 1, 1], g[1].clone()),
        ]),
    ]
}

fn both_zero<K: Field>(a: &K, b: &K) -> bool {
    a.is_zero() && b.is_zero()
}

/// Birationality conditions on (α, β, γ), reporting the first failure.
fn birationality_witness<K: Field>(p: &MapParams<K>) -> Option<String> {
    let (a, b, g) = (&p.alpha, &p.beta, &p.gamma);
    if both_zero(&a[1], &a[2]) {
        return Some("(α1,α2)=(0,0)".into());
    }
    if both_zero(&g[1], &g[2]) {
        return Some("(γ1,γ2)=(0,0)".into());
    }
    if proportional(b, g) {
        return Some("β and γ are linearly dependent".into());
    }
    let ab12 = minor(a, b, 1, 2);
    let ag12 = minor(a, g, 1, 2);
    let bg12 = minor(b, g, 1, 2);
    if both_zero(&ab12, &ag12) {
        return Some("((αβ)_{12},(αγ)_{12})=(0,0)".into());
    }
    if both_zero(&ag12, &bg12) {
        return Some("((αγ)_{12},(βγ)_{12})=(0,0)".into());
    }
    if both_zero(&ab12, &bg12) && !both_zero(&b[1], &b[2]) {
        return Some("((αβ)_{12},(βγ)_{12})=(0,0) with (β1,β2)≠(0,0)".into());
    }
    None
}

fn special_data<K: Field>(p: &MapParams<K>) -> Result<SpecialData<K>, MapError> {
    let (a, b, g) = (&p.alpha, &p.beta, &p.gamma);
    let z = p.unit().zero_like();
    let one = p.unit();
    let bg = |i, j| minor(b, g, i, j);
    let ag = |i, j| minor(a, g, i, j);
    let ab = |i, j| minor(a, b, i, j);
    let o = [
        ProjPoint::new([bg(1, 2), bg(2, 0), bg(0, 1)])?,
        ProjPoint::new([z.clone(), a[2].clone(), a[1].neg()])?,
        ProjPoint::new([z.clone(), g[2].clone(), g[1].neg()])?,
    ];
    let c = a[0].mul(&bg(1, 2)).sub(&a[1].mul(&bg(0, 2))).add(&a[2].mul(&bg(0, 1)));
    let a2 = [bg(1, 2).mul(&ag(1, 2)), c.mul(&ag(1, 2)), ab(1, 2).mul(&bg(1, 2))];
    let a_pts = [
        ProjPoint::new([z.clone(), one.clone(), z.clone()])?,
        ProjPoint::new([z.clone(), z.clone(), one.clone()])?,
        ProjPoint::new(a2).map_err(|_| MapError::Inconsistent("A_2 is the zero vector".into()))?,
    ];
    let s = [
        ProjLine::new([one.clone(), z.clone(), z.clone()])?,
        ProjLine::new(g.clone())?,
        ProjLine::new([
            a[1].mul(&bg(0, 2)).sub(&a[2].mul(&bg(0, 1))),
            a[1].mul(&bg(1, 2)),
            a[2].mul(&bg(1, 2)),
        ])?,
    ];
    let t0 = g[0].mul(&ab(1, 2)).sub(&g[1].mul(&ab(0, 2))).add(&g[2].mul(&ab(0, 1)));
    let t = [
        ProjLine::new([t0, bg(1, 2).neg(), z.clone()])?,
        ProjLine::new([ab(1, 2), z.clone(), ag(1, 2).neg()])?,
        ProjLine::new([one, z.clone(), z])?,
    ];
    Ok(SpecialData { o, a: a_pts, s, t })
}

/// Raw image of a coordinate triple under three quadratic forms.
pub fn eval_components<K: Field>(c: &[HomogeneousPoly3<K>; 3], p: &[K; 3]) -> [K; 3] {
    std::array::from_fn(|i| c[i].eval(p))
}

/// Generic points of a line, avoiding points where `c` vanishes identically.
fn line_samples<K: Field>(l: &ProjLine<K>, c: &[HomogeneousPoly3<K>; 3], count: usize) -> Vec<[K; 3]> {
    let [u, v] = l.spanning_points();
    let mut out = Vec::new();
    let mut k = 2i64;
    while out.len() < count && k < 64 {
        let s = u[0].from_i64_like(k);
        let s2 = u[0].from_i64_like(k * k - 3);
        let pt: [K; 3] = std::array::from_fn(|i| u[i].mul(&s2).add(&v[i].mul(&s)));
        if !is_zero_vec(&eval_components(c, &pt)) {
            out.push(pt);
        }
        k += 1;
    }
    out
}

impl<K: Field> QuadraticMap<K> {
    pub fn build(params: MapParams<K>) -> Result<Self, MapError> {
        if let Some(w) = birationality_witness(&params) {
            return Err(MapError::NotBirational(w));
        }
        let components = projective_components(&params);
        let g = components[0].gcd(&components[1]).gcd(&components[2]);
        if !g.is_constant() {
            return Err(MapError::DegreeDrop(g.degree()));
        }
        let bg12 = minor(&params.beta, &params.gamma, 1, 2);
        let ag12 = minor(&params.alpha, &params.gamma, 1, 2);
        let degeneracy_witness = if bg12.is_zero() {
            Some("(βγ)_{12}=0".to_string())
        } else if ag12.is_zero() {
            Some("(αγ)_{12}=0".to_string())
        } else {
            None
        };
        let degenerate = degeneracy_witness.is_some();
        let inverse_components = inverse_components(&params);
        let special = if degenerate { None } else { Some(special_data(&params)?) };
        let map = QuadraticMap { params, components, inverse_components, degenerate, degeneracy_witness, special };
        if let Some(sd) = &map.special {
            map.check_incidence(sd)?;
        }
        Ok(map)
    }

    fn check_incidence(&self, sd: &SpecialData<K>) -> Result<(), MapError> {
        let meets = |i: usize, j: usize, k: usize| sd.o[i].lies_on(&sd.s[j]) && sd.o[i].lies_on(&sd.s[k]);
        if !(meets(0, 1, 2) && meets(1, 0, 2) && meets(2, 0, 1)) {
            return Err(MapError::Inconsistent("O_i not at the intersections of the S lines".into()));
        }
        for i in 0..3 {
            for p in line_samples(&sd.s[i], &self.components, 2) {
                if ProjPoint::new(self.eval_raw(&p)).ok().as_ref() != Some(&sd.a[i]) {
                    return Err(MapError::Inconsistent(format!("S_{} does not collapse to A_{}", i, i)));
                }
            }
        }
        Ok(())
    }

    pub fn unit(&self) -> K {
        self.params.unit()
    }

    pub fn special(&self) -> Result<&SpecialData<K>, MapError> {
        self.special.as_ref().ok_or_else(|| {
            MapError::DegenerateMap(self.degeneracy_witness.clone().unwrap_or_default())
        })
    }

    /// `({O_0,O_1,O_2}, {A_0,A_1,A_2})`
    pub fn special_points(&self) -> Result<(&[ProjPoint<K>; 3], &[ProjPoint<K>; 3]), MapError> {
        let s = self.special()?;
        Ok((&s.o, &s.a))
    }

    /// `({S_0,S_1,S_2}, {T_0,T_1,T_2})`
    pub fn exceptional_lines(&self) -> Result<(&[ProjLine<K>; 3], &[ProjLine<K>; 3]), MapError> {
        let s = self.special()?;
        Ok((&s.s, &s.t))
    }

    pub fn eval_raw(&self, p: &[K; 3]) -> [K; 3] {
        eval_components(&self.components, p)
    }

    pub fn eval_point(&self, p: &ProjPoint<K>) -> Result<ProjPoint<K>, MapError> {
        ProjPoint::new(self.eval_raw(p.coords())).map_err(|_| MapError::IndeterminatePoint)
    }

    pub fn eval_inverse(&self, p: &ProjPoint<K>) -> Result<ProjPoint<K>, MapError> {
        ProjPoint::new(eval_components(&self.inverse_components, p.coords()))
            .map_err(|_| MapError::IndeterminatePoint)
    }

    /// The map whose components are the homogenized inverse. Its special
    /// data is not computed (the inverse is not of the family's form).
    pub fn invert_map(&self) -> QuadraticMap<K> {
        QuadraticMap {
            params: self.params.clone(),
            components: self.inverse_components.clone(),
            inverse_components: self.components.clone(),
            degenerate: self.degenerate,
            degeneracy_witness: self.degeneracy_witness.clone(),
            special: None,
        }
    }

    /// Numerator of the Jacobian determinant of f or f^{-1}, in affine x, y.
    pub fn jacobian_numerator(&self, which: Direction) -> BiPoly<K> {
        let (a, b, g) = (&self.params.alpha, &self.params.beta, &self.params.gamma);
        let bg = |i, j| minor(b, g, i, j);
        match which {
            Direction::Forward => BiPoly::affine(&[
                a[1].mul(&bg(0, 2)).sub(&a[2].mul(&bg(0, 1))),
                a[1].mul(&bg(1, 2)),
                a[2].mul(&bg(1, 2)),
            ]),
            Direction::Inverse => {
                let z = self.unit().zero_like();
                BiPoly::affine(&[
                    a[0].mul(&bg(1, 2)).sub(&a[1].mul(&bg(0, 2))).add(&a[2].mul(&bg(0, 1))),
                    z,
                    bg(1, 2).neg(),
                ])
            }
        }
    }

    /// Index j with P = O_j.
    pub fn indeterminacy_index(&self, p: &ProjPoint<K>) -> Option<usize> {
        self.special.as_ref()?.o.iter().position(|o| o == p)
    }

    /// Indices i with P on S_i.
    pub fn exceptional_indices(&self, p: &ProjPoint<K>) -> Vec<usize> {
        match &self.special {
            None => Vec::new(),
            Some(sd) => (0..3).filter(|&i| p.lies_on(&sd.s[i])).collect(),
        }
    }
}

impl<K: ExactField> QuadraticMap<K> {
    /// Coefficient-wise reduction; None if some coefficient is not p-integral.
    pub fn reduce(&self, ctx: &ModularContext) -> Option<QuadraticMap<Fp>> {
        let r3 = |a: &[K; 3]| -> Option<[Fp; 3]> {
            Some([ctx.reduce(&a[0])?, ctx.reduce(&a[1])?, ctx.reduce(&a[2])?])
        };
        let params = MapParams { alpha: r3(&self.params.alpha)?, beta: r3(&self.params.beta)?, gamma: r3(&self.params.gamma)? };
        let rc = |c: &[HomogeneousPoly3<K>; 3]| -> Option<[HomogeneousPoly3<Fp>; 3]> {
            Some([c[0].reduce(ctx)?, c[1].reduce(ctx)?, c[2].reduce(ctx)?])
        };
        let special = match &self.special {
            None => None,
            Some(sd) => {
                let pts = |v: &[ProjPoint<K>; 3]| -> Option<[ProjPoint<Fp>; 3]> {
                    Some([v[0].reduce(ctx)?, v[1].reduce(ctx)?, v[2].reduce(ctx)?])
                };
                let lines = |v: &[ProjLine<K>; 3]| -> Option<[ProjLine<Fp>; 3]> {
                    Some([v[0].reduce(ctx)?, v[1].reduce(ctx)?, v[2].reduce(ctx)?])
                };
                Some(SpecialData { o: pts(&sd.o)?, a: pts(&sd.a)?, s: lines(&sd.s)?, t: lines(&sd.t)? })
            }
        };
        Some(QuadraticMap {
            params,
            components: rc(&self.components)?,
            inverse_components: rc(&self.inverse_components)?,
            degenerate: self.degenerate,
            degeneracy_witness: self.degeneracy_witness.clone(),
            special,
        })
    }
}

pub fn build_map<K: Field>(params: MapParams<K>) -> Result<QuadraticMap<K>, MapError> {
    QuadraticMap::build(params)
}

pub fn normalize_point<K: Field>(raw: [K; 3]) -> Result<ProjPoint<K>, MapError> {
    ProjPoint::new(raw)
}

#[cfg(test)]
mod tests {
    use super::*;

    type G = GaussianRational;

    fn pt(a: [i64; 3]) -> ProjPoint<G> {
        ProjPoint::new(a.map(G::from_int)).unwrap()
    }

    fn lyness() -> QuadraticMap<G> {
        build_map(MapParams::from_ints([0, 0, 1], [1, 0, 1], [0, 1, 0])).unwrap()
    }

    #[test]
    fn lyness_special_points() {
        let m = lyness();
        assert!(!m.degenerate);
        let (o, a) = m.special_points().unwrap();
        assert_eq!(o[0], pt([1, 0, -1]));
        assert_eq!(o[1], pt([0, 1, 0]));
        assert_eq!(o[2], pt([0, 0, 1]));
        assert_eq!(a[0], pt([0, 1, 0]));
        assert_eq!(a[1], pt([0, 0, 1]));
        assert_eq!(a[2], pt([1, -1, 0]));
    }

    #[test]
    fn lyness_lines() {
        let m = lyness();
        let (s, t) = m.exceptional_lines().unwrap();
        assert_eq!(s[0].coeffs(), &[1, 0, 0].map(G::from_int));
        assert_eq!(s[1].coeffs(), &[0, 1, 0].map(G::from_int));
        assert_eq!(t[2], s[0]);
        for p in line_samples(&s[1], &m.components, 2) {
            assert_eq!(m.eval_point(&ProjPoint::new(p).unwrap()).unwrap(), pt([0, 0, 1]));
        }
    }

    #[test]
    fn lyness_eval() {
        let m = lyness();
        assert_eq!(m.eval_point(&pt([1, -1, 0])).unwrap(), pt([1, 0, -1]));
        assert_eq!(m.eval_point(&pt([1, 0, -1])), Err(MapError::IndeterminatePoint));
        assert_eq!(m.eval_point(&pt([1, 1, 1])).unwrap(), pt([1, 1, 2]));
    }

    #[test]
    fn lyness_inverse_round_trip() {
        let m = lyness();
        let p = pt([1, 2, 3]);
        let q = m.eval_inverse(&p).unwrap();
        // f^{-1}(2,3) = ((1+2)/3, 2) = (1, 2)
        assert_eq!(q, pt([1, 1, 2]));
        assert_eq!(m.eval_point(&q).unwrap(), p);
    }

    #[test]
    fn lyness_jacobians() {
        let m = lyness();
        let one = G::one();
        let fwd = m.jacobian_numerator(Direction::Forward);
        assert_eq!(fwd, BiPoly::affine(&[G::from_int(-1), G::zero(), G::from_int(-1)]));
        let inv = m.jacobian_numerator(Direction::Inverse);
        assert_eq!(inv, BiPoly::affine(&[one.clone(), G::zero(), one]));
    }

    #[test]
    fn dependent_rows_not_birational() {
        let r = build_map(MapParams::from_ints([0, 1, 1], [1, 2, 0], [2, 4, 0]));
        assert!(matches!(r, Err(MapError::NotBirational(_))));
    }

    #[test]
    fn degenerate_flag() {
        let m = build_map(MapParams::from_ints([0, 1, 1], [1, 2, 1], [1, 1, 1])).unwrap();
        assert!(m.degenerate);
        assert_eq!(m.degeneracy_witness.as_deref(), Some("(αγ)_{12}=0"));
        assert!(matches!(m.special_points(), Err(MapError::DegenerateMap(_))));
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_point([0, 0, 5].map(G::from_int)).unwrap().coords(), &[0, 0, 1].map(G::from_int));
        assert_eq!(normalize_point([-2, 4, 6].map(G::from_int)).unwrap().coords(), &[1, -2, -3].map(G::from_int));
        let w = G::one().add(&G::i());
        let p = normalize_point([G::zero(), w.clone(), w]).unwrap();
        assert_eq!(p.coords(), &[0, 1, 1].map(G::from_int));
        assert_eq!(normalize_point([0, 0, 0].map(G::from_int)), Err(MapError::ZeroVector));
    }

    #[test]
    fn f1_at_sample_point() {
        let m = build_map(MapParams::from_ints([0, 0, 1], [1, 0, 1], [0, 1, 0])).unwrap();
        let v = m.components[0].eval(&[1, 2, 3].map(G::from_int));
        assert_eq!(v, G::from_int(2));
    }
}
