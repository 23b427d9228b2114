//! Walls, scattering diagrams, path-ordered products and rank-2 completion.
//!
//! Exponents live in `M ⊕ N` (the `A` half first, then the `X` half). A wall
//! with primitive normal `n ∈ N⁺` carries a series in `z^{p̃*(n,0)}`; crossing
//! it acts by `z^m ↦ z^m f^{⟨m, n₀⟩}` where `n₀ = ±n` is chosen with
//! `⟨n₀, γ'⟩ < 0` for the velocity `γ'` of the path.

mod complex;
pub mod plane;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

pub use complex::{cluster_complex, cluster_complex_diagram, Chamber, ClusterComplex};
use plane::{angle_cmp, angle_cmp_from, rat, same_direction, segment_ray, Hit, Point};

use crate::error::{check_len, Error, Result};
use crate::lattice::{LatticeVec, SkewForm};
use crate::laurent::LaurentPoly;
use crate::quiver::{Component, Quiver};
use crate::series::{
    check_terms, degree, factor_binomial_product, univariate_coeffs, GradedSeries,
};

/// Direction of a transversal crossing relative to the wall normal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    /// `⟨normal, γ'⟩ > 0`.
    Positive,
    Negative,
}

impl Sign {
    fn as_i64(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

/// Support of a wall inside `normal^⊥ ⊂ M_R`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Support {
    /// All of `normal^⊥`.
    Line,
    /// Rank 2: the half-line `R_{≥0}·dir`.
    Ray(LatticeVec),
    /// The cone spanned by the generators.
    Cone(Vec<LatticeVec>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wall {
    pub normal: LatticeVec,
    pub support: Support,
    pub func: GradedSeries,
    pub incoming: bool,
}

impl Wall {
    /// Checks that `normal` is primitive in `N⁺`, that `func` is a series in
    /// `z^{p̃*(normal,0)}` with constant term 1, and records whether the wall
    /// is incoming.
    pub fn new(
        form: &SkewForm,
        normal: LatticeVec,
        support: Support,
        func: GradedSeries,
    ) -> Result<Self> {
        check_len(form.rank(), normal.len())?;
        match normal.primitive() {
            Some((_, 1)) if normal.is_nonnegative() => {}
            _ => {
                return Err(Error::Invalid(format!(
                    "wall normal {normal} is not primitive in N⁺"
                )))
            }
        }
        let step = form.tilde_p_star_n(&normal)?;
        let coeffs = univariate_coeffs(&func, &step);
        let rebuilt = LaurentPoly::from_terms(
            step.len(),
            coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| (step.scale(j as i64), c.clone())),
        );
        if !coeffs.first().is_some_and(|c| c.is_one()) || &rebuilt != func.poly() {
            return Err(Error::Invalid(format!(
                "wall function is not 1 + O(z^{step})"
            )));
        }
        let p = form.p_star(&normal)?;
        let incoming = support_contains_lattice(&support, &normal, &p);
        Ok(Wall {
            normal,
            support,
            func,
            incoming,
        })
    }

    /// `p̃*(normal, 0)`, the exponent the wall function is a series in.
    pub fn step(&self, form: &SkewForm) -> LatticeVec {
        form.tilde_p_star_n(&self.normal)
            .expect("normal has the form's rank")
    }

    /// Coefficients `a_0 = 1, a_1, …` with `f = Σ a_j z^{j·step}`.
    pub fn coefficients(&self, form: &SkewForm) -> Vec<BigInt> {
        univariate_coeffs(&self.func, &self.step(form))
    }

    /// Exponents `c_j` with `f = ∏ (1 + z^{j·step})^{c_j}` to the wall's order.
    pub fn factors(&self, form: &SkewForm) -> Result<Vec<(i64, BigInt)>> {
        factor_binomial_product(&self.func, &self.step(form))
    }

    /// Rank 2: the half-lines from the origin making up the support.
    pub fn half_lines(&self) -> Vec<Point> {
        match &self.support {
            Support::Line => {
                let d = Point::from_ints(-self.normal[1], self.normal[0]);
                vec![d.clone(), d.neg()]
            }
            Support::Ray(d) => vec![Point::from_ints(d[0], d[1])],
            Support::Cone(g) if g.len() == 1 => vec![Point::from_ints(g[0][0], g[0][1])],
            Support::Cone(_) => Vec::new(),
        }
    }

    /// Rank 2: whether `p` lies on the support (the origin always does).
    pub fn contains_point(&self, p: &Point) -> bool {
        p.is_origin() || self.half_lines().iter().any(|r| same_direction(r, p))
    }

    fn with_order(&self, order: u32) -> Wall {
        Wall {
            func: GradedSeries::new(self.func.poly().clone(), order),
            ..self.clone()
        }
    }
}

fn support_contains_lattice(s: &Support, normal: &LatticeVec, v: &LatticeVec) -> bool {
    match s {
        Support::Line => v.dot(normal) == 0,
        Support::Ray(d) => {
            let (a, b) = (d[0] * v[1] - d[1] * v[0], d[0] * v[0] + d[1] * v[1]);
            a == 0 && (b > 0 || v.is_zero())
        }
        Support::Cone(g) => complex::in_cone(g, v),
    }
}

/// A finite collection of walls, all functions truncated at `order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScatteringDiagram {
    pub form: SkewForm,
    pub order: u32,
    pub walls: Vec<Wall>,
}

impl ScatteringDiagram {
    pub fn new(form: SkewForm, order: u32) -> Self {
        ScatteringDiagram {
            form,
            order,
            walls: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.form.rank()
    }

    pub fn nvars(&self) -> usize {
        2 * self.rank()
    }

    pub fn add_wall(&mut self, w: Wall) {
        self.walls.push(w);
    }

    /// Index of the rank-2 ray wall pointing along `dir`.
    pub fn ray_wall(&self, dir: &Point) -> Option<usize> {
        self.walls.iter().position(|w| {
            matches!(w.support, Support::Ray(_)) && same_direction(&w.half_lines()[0], dir)
        })
    }

    /// Errors if `p` lies on the support of a wall (rank 2).
    pub fn check_generic(&self, p: &Point) -> Result<()> {
        self.require_rank2()?;
        if let Some(w) = self.walls.iter().find(|w| w.contains_point(p)) {
            return Err(Error::NotGeneric(format!(
                "{p} lies on the wall with normal {}",
                w.normal
            )));
        }
        Ok(())
    }

    fn require_rank2(&self) -> Result<()> {
        if self.rank() != 2 {
            return Err(Error::Unsupported(format!(
                "planar operation on a rank-{} diagram",
                self.rank()
            )));
        }
        Ok(())
    }

    /// Re-truncates every wall function; only sound for functions known to
    /// the new order (initial and cluster-complex walls are exact binomials).
    pub fn with_order(&self, order: u32) -> ScatteringDiagram {
        ScatteringDiagram {
            form: self.form.clone(),
            order,
            walls: self.walls.iter().map(|w| w.with_order(order)).collect(),
        }
    }

    /// Sorts rays by angle after the full lines, for stable output.
    pub fn normalize(&mut self) {
        self.walls.sort_by(|a, b| wall_key_cmp(a, b));
    }
}

fn wall_key_cmp(a: &Wall, b: &Wall) -> Ordering {
    let rank = |w: &Wall| match w.support {
        Support::Line => 0,
        Support::Ray(_) => 1,
        Support::Cone(_) => 2,
    };
    rank(a).cmp(&rank(b)).then_with(|| {
        match (&a.support, &b.support) {
            (Support::Ray(x), Support::Ray(y)) => {
                angle_cmp(&Point::from_ints(x[0], x[1]), &Point::from_ints(y[0], y[1]))
            }
            (Support::Cone(x), Support::Cone(y)) => x.cmp(y),
            _ => Ordering::Equal,
        }
        .then_with(|| a.normal.cmp(&b.normal))
    })
}

/// The walls `((e_i, 0)^⊥, 1 + z^{p̃*(e_i, 0)})`.
pub fn initial_diagram(form: &SkewForm, order: u32) -> Result<ScatteringDiagram> {
    let n = form.rank();
    let mut d = ScatteringDiagram::new(form.clone(), order);
    for i in 0..n {
        let e = LatticeVec::unit(n, i);
        let f = GradedSeries::binomial(form.tilde_p_star_n(&e)?, BigInt::one(), order);
        d.add_wall(Wall::new(form, e, Support::Line, f)?);
    }
    Ok(d)
}

/// `⟨m, normal⟩` for an exponent `m ∈ M ⊕ N` (only the `M` half pairs).
fn pair_m(exp: &LatticeVec, normal: &LatticeVec) -> i64 {
    exp.0.iter().zip(&normal.0).map(|(a, b)| a * b).sum()
}

/// `c·z^m ↦ c·z^m f^{⟨m, n₀⟩}` for a crossing with the given sign, keeping
/// terms of degree at most `max_degree`.
pub fn wall_cross(
    exp: &LatticeVec,
    coeff: &BigInt,
    w: &Wall,
    sign: Sign,
    max_degree: i64,
) -> Result<LaurentPoly> {
    let e = -sign.as_i64() * pair_m(exp, &w.normal);
    let mono = LaurentPoly::monomial(coeff.clone(), exp.clone());
    if e == 0 {
        return Ok(mono);
    }
    let fe = w.func.pow(e)?;
    let out = mono.mul_filtered(fe.poly(), |x| degree(x) <= max_degree);
    check_terms(&out)?;
    Ok(out)
}

/// Sign of a crossing with velocity `v ∈ M_R`; tangential crossings are errors.
pub fn crossing_sign(v: &[BigRational], w: &Wall) -> Result<Sign> {
    check_len(w.normal.len(), v.len())?;
    let s: BigRational = v.iter().zip(&w.normal.0).map(|(a, &b)| a * rat(b)).sum();
    if s.is_positive() {
        Ok(Sign::Positive)
    } else if s.is_negative() {
        Ok(Sign::Negative)
    } else {
        Err(Error::NonTransversal(format!(
            "velocity is tangent to the wall with normal {}",
            w.normal
        )))
    }
}

fn crossing_sign_2d(v: &Point, w: &Wall) -> Result<Sign> {
    crossing_sign(&[v.x.clone(), v.y.clone()], w)
}

/// One transversal crossing of a path with a wall.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub wall: usize,
    pub sign: Sign,
    /// The crossing point, or for arcs the direction of the half-line.
    pub at: Point,
}

/// A path in the plane of a rank-2 diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CrossingPath {
    /// Around the origin from direction `from` to direction `to`; a full turn
    /// when the two directions agree.
    Arc { from: Point, to: Point, ccw: bool },
    /// Straight segments between waypoints.
    Polyline(Vec<Point>),
}

impl CrossingPath {
    pub fn full_loop(start: Point) -> Self {
        CrossingPath::Arc {
            from: start.clone(),
            to: start,
            ccw: true,
        }
    }

    pub fn crossings(&self, d: &ScatteringDiagram) -> Result<Vec<Crossing>> {
        d.require_rank2()?;
        match self {
            CrossingPath::Arc { from, to, ccw } => arc_crossings(d, from, to, *ccw, false),
            CrossingPath::Polyline(pts) => polyline_crossings(d, pts),
        }
    }
}

/// Crossings of an arc. With `lenient`, half-lines along `from` or `to` are
/// skipped instead of rejected.
pub(crate) fn arc_crossings(
    d: &ScatteringDiagram,
    from: &Point,
    to: &Point,
    ccw: bool,
    lenient: bool,
) -> Result<Vec<Crossing>> {
    if from.is_origin() || to.is_origin() {
        return Err(Error::InvalidPath("arc endpoint at the origin".into()));
    }
    let (a, b) = if ccw { (from, to) } else { (to, from) };
    let full = same_direction(a, b);
    let mut hits: Vec<(Point, usize)> = Vec::new();
    for (i, w) in d.walls.iter().enumerate() {
        for r in w.half_lines() {
            if same_direction(&r, a) || same_direction(&r, b) {
                if lenient {
                    continue;
                }
                return Err(Error::NotGeneric(format!(
                    "arc endpoint lies on the wall with normal {}",
                    w.normal
                )));
            }
            if full || angle_cmp_from(a, &r, b) == Ordering::Less {
                hits.push((r, i));
            }
        }
    }
    hits.sort_by(|x, y| angle_cmp_from(a, &x.0, &y.0));
    if hits.windows(2).any(|p| same_direction(&p[0].0, &p[1].0)) {
        return Err(Error::InvalidPath(
            "two walls share a half-line; merge them first".into(),
        ));
    }
    if !ccw {
        hits.reverse();
    }
    hits.into_iter()
        .map(|(r, i)| {
            let v = if ccw { r.rot90() } else { r.rot90().neg() };
            Ok(Crossing {
                wall: i,
                sign: crossing_sign_2d(&v, &d.walls[i])?,
                at: r,
            })
        })
        .collect()
}

fn polyline_crossings(d: &ScatteringDiagram, pts: &[Point]) -> Result<Vec<Crossing>> {
    if pts.len() < 2 {
        return Ok(Vec::new());
    }
    d.check_generic(&pts[0])?;
    d.check_generic(&pts[pts.len() - 1])?;
    let mut out = Vec::new();
    for (seg, pair) in pts.windows(2).enumerate() {
        let v = pair[1].sub(&pair[0]);
        let mut hits: Vec<(BigRational, usize)> = Vec::new();
        for (i, w) in d.walls.iter().enumerate() {
            for r in w.half_lines() {
                match segment_ray(&pair[0], &v, &r, false) {
                    Hit::None => {}
                    Hit::At(t) => hits.push((t, i)),
                    Hit::Degenerate(why) => {
                        return Err(Error::InvalidPath(format!("segment {}: {why}", seg + 1)));
                    }
                }
            }
        }
        hits.sort();
        if hits.windows(2).any(|h| h[0].0 == h[1].0) {
            return Err(Error::InvalidPath(format!(
                "segment {} meets two walls at once",
                seg + 1
            )));
        }
        for (t, i) in hits {
            out.push(Crossing {
                wall: i,
                sign: crossing_sign_2d(&v, &d.walls[i])?,
                at: pair[0].add(&v.scale(&t)),
            });
        }
    }
    Ok(out)
}

/// Caches `f^e` per wall.
#[derive(Default)]
pub(crate) struct WallPowers {
    cache: HashMap<(usize, i64), LaurentPoly>,
}

impl WallPowers {
    pub(crate) fn get(
        &mut self,
        d: &ScatteringDiagram,
        wall: usize,
        e: i64,
    ) -> Result<&LaurentPoly> {
        if !self.cache.contains_key(&(wall, e)) {
            let p = d.walls[wall].func.pow(e)?.into_poly();
            self.cache.insert((wall, e), p);
        }
        Ok(&self.cache[&(wall, e)])
    }
}

/// Applies the crossings in order to `f`, each acting termwise.
pub(crate) fn apply_crossings(
    d: &ScatteringDiagram,
    crossings: &[Crossing],
    f: &LaurentPoly,
    max_degree: i64,
    powers: &mut WallPowers,
) -> Result<LaurentPoly> {
    let mut cur = f.clone();
    for c in crossings {
        let w = &d.walls[c.wall];
        let mut next = LaurentPoly::zero(cur.nvars());
        for (exp, coeff) in cur.terms() {
            let e = -c.sign.as_i64() * pair_m(exp, &w.normal);
            let mono = LaurentPoly::monomial(coeff.clone(), exp.clone());
            if e == 0 {
                next = next.add(&mono);
                continue;
            }
            let fe = powers.get(d, c.wall, e)?;
            next = next.add(&mono.mul_filtered(fe, |x| degree(x) <= max_degree));
        }
        check_terms(&next)?;
        cur = next;
    }
    Ok(cur)
}

/// `p_{γ,D}(f)`, truncated at `max_degree`.
pub fn path_ordered_product(
    path: &CrossingPath,
    d: &ScatteringDiagram,
    f: &LaurentPoly,
    max_degree: i64,
) -> Result<LaurentPoly> {
    let crossings = path.crossings(d)?;
    apply_crossings(d, &crossings, f, max_degree, &mut WallPowers::default())
}

/// A direction in the open positive chamber; no outgoing ray of a rank-2
/// cluster diagram ever lies there.
fn loop_start() -> Point {
    Point::from_ints(1, 1)
}

/// Adds outgoing rays, degree by degree, until a loop around the origin acts
/// trivially modulo degree `k + 1`.
///
/// At degree `d` the loop acts as `z^m ↦ z^m (1 + Σ_{|n| = d} β_n ⟨m, n⟩ z^{p̃*(n,0)})`
/// modulo higher terms; `β_n` is read off from `z^{(f_1,0)}` and `z^{(f_2,0)}`
/// and cancelled by a factor on the ray `R_{≥0}·(−p*(n))`.
pub fn complete_rank2(d: &ScatteringDiagram, k: u32) -> Result<ScatteringDiagram> {
    d.require_rank2()?;
    let form = d.form.clone();
    let mut out = d.with_order(k);
    let start = loop_start();
    out.check_generic(&start)?;
    let basis = [LatticeVec(vec![1, 0, 0, 0]), LatticeVec(vec![0, 1, 0, 0])];
    for deg in 1..=k as i64 {
        let crossings = CrossingPath::full_loop(start.clone()).crossings(&out)?;
        let mut powers = WallPowers::default();
        let mut defect: BTreeMap<LatticeVec, BigRational> = BTreeMap::new();
        for (i, b) in basis.iter().enumerate() {
            let img = apply_crossings(
                &out,
                &crossings,
                &LaurentPoly::z(b.clone()),
                deg,
                &mut powers,
            )?;
            for (exp, c) in img.terms() {
                let rel = exp - b;
                if rel.is_zero() || degree(&rel) < deg {
                    continue;
                }
                let (_, n) = rel.halves();
                if form.tilde_p_star_n(&n)? != rel || n[i] == 0 {
                    return Err(Error::Invalid(format!(
                        "loop defect z^{rel} is not of wall type"
                    )));
                }
                let beta = BigRational::new(c.clone(), BigInt::from(n[i]));
                if let Some(prev) = defect.insert(n.clone(), beta.clone()) {
                    if prev != beta {
                        return Err(Error::Invalid(format!(
                            "loop defect at {n} is not a derivation"
                        )));
                    }
                }
            }
        }
        for (n, beta) in defect {
            let (prim, j) = n.primitive().expect("defect exponent is nonzero");
            let dir = form.p_star(&prim)?.scale(-1);
            let dir = dir.primitive().map(|(p, _)| p).ok_or_else(|| {
                Error::Unsupported(format!("p*({prim}) = 0: no ray to carry the defect"))
            })?;
            let dir_pt = Point::from_ints(dir[0], dir[1]);
            let probe = Wall::new(
                &form,
                prim.clone(),
                Support::Ray(dir.clone()),
                GradedSeries::one(4, k),
            )?;
            let sign = crossing_sign_2d(&dir_pt.rot90(), &probe)?;
            let a = beta * BigRational::from_integer(BigInt::from(j * sign.as_i64()));
            if !a.is_integer() {
                return Err(Error::Invalid(format!(
                    "non-integral ray coefficient {a} at {n}"
                )));
            }
            let factor = GradedSeries::binomial(form.tilde_p_star_n(&n)?, a.to_integer(), k);
            match out.ray_wall(&dir_pt) {
                Some(idx) if out.walls[idx].normal == prim => {
                    out.walls[idx].func = out.walls[idx].func.mul(&factor)?;
                }
                Some(_) => return Err(Error::Invalid(format!("ray {dir} carries two normals"))),
                None => {
                    if out.walls.iter().any(|w| w.contains_point(&dir_pt)) {
                        return Err(Error::Unsupported(format!(
                            "defect ray {dir} lies on a full wall"
                        )));
                    }
                    out.add_wall(Wall::new(&form, prim, Support::Ray(dir), factor)?);
                }
            }
        }
    }
    out.normalize();
    Ok(out)
}

/// The consistent rank-2 diagram of `ε = [[0, b], [−b, 0]]` to order `k`.
pub fn rank2_diagram(b: i64, k: u32) -> Result<ScatteringDiagram> {
    let form = SkewForm::rank2(b);
    complete_rank2(&initial_diagram(&form, k)?, k)
}

/// Loop product applied to `z^{(f_i, 0)}` minus the identity, for each `i`.
pub fn loop_defect(d: &ScatteringDiagram, k: i64) -> Result<Vec<LaurentPoly>> {
    let crossings = CrossingPath::full_loop(loop_start()).crossings(d)?;
    let mut powers = WallPowers::default();
    (0..d.rank())
        .map(|i| {
            let b = LatticeVec::unit(d.nvars(), i);
            let z = LaurentPoly::z(b);
            Ok(apply_crossings(d, &crossings, &z, k, &mut powers)?.sub(&z))
        })
        .collect()
}

/// For cluster-complex walls `w1`, `w2` with normals `c₁`, `c₂`: when a
/// positive crossing leads from the outgoing part of `w1` (which contains
/// `−p*(c₁)`) to `w2`, i.e. `⟨−p*(c₁), c₂⟩ = −{c₁, c₂} < 0`, checks that the
/// indecomposable `C₂` is a predecessor of `C₁`. Other pairs hold vacuously.
pub fn ar_order_check(w1: &Wall, w2: &Wall, q: &Quiver) -> Result<bool> {
    let form = q.skew_form();
    let (c1, c2) = (&w1.normal, &w2.normal);
    let a = q.classify_indecomposable(c1)?;
    let b = q.classify_indecomposable(c2)?;
    if a.component == Component::R && b.component == Component::R {
        return Err(Error::Unsupported(format!("regular normals {c1} and {c2}")));
    }
    let s = -form.pair(c1, c2)?;
    if s >= 0 || c1 == c2 {
        return Ok(true);
    }
    Ok(q.is_predecessor(&b, &a))
}

/// Rank-2 positive chamber test: `⟨e_i, m⟩ ≥ 0` for all `i`.
pub fn in_positive_chamber(m: &Point) -> bool {
    !m.x.is_negative() && !m.y.is_negative()
}

/// Numeric degree helper used by emitters.
pub fn wall_degree(w: &Wall) -> i64 {
    w.normal.total()
}
