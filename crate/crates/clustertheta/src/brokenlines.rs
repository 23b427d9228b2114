//! Broken lines and theta functions in rank-2 diagrams.
//!
//! Lines are found backwards from the endpoint. For each candidate final
//! exponent `m₀ + p̃*(c, 0)` with `|c| ≤ k` the last segment is traced back
//! along `+μ` (the line moves along `−μ`, `μ` the `M` part of its exponent).
//! At each wall met, either the line passes, or it bent there from an
//! exponent `m' = m − j·p̃*(n, 0)` with `j·n ≤ c_rem`; the bend contributes
//! the coefficient of `z^{j·p̃*(n,0)}` in `f^{|⟨m', n⟩|}`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::lattice::LatticeVec;
use crate::laurent::LaurentPoly;
use crate::scattering::plane::{segment_ray, Hit, Point};
use crate::scattering::{
    apply_crossings, arc_crossings, cluster_complex, ScatteringDiagram, WallPowers,
};
use crate::series::degree;

/// One straight piece of a broken line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    #[serde(with = "crate::laurent::bigint_str")]
    pub coeff: BigInt,
    pub exponent: LatticeVec,
    /// Bend point where the segment begins; `None` for the unbounded first piece.
    pub start: Option<Point>,
    /// Index of the wall bent at.
    pub bend_wall: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrokenLine {
    pub initial: LatticeVec,
    pub endpoint: Point,
    pub segments: Vec<Segment>,
}

impl BrokenLine {
    pub fn last(&self) -> &Segment {
        self.segments.last().expect("a broken line has a segment")
    }

    /// `Mono(γ)` as a polynomial.
    pub fn monomial(&self) -> LaurentPoly {
        let s = self.last();
        LaurentPoly::monomial(s.coeff.clone(), s.exponent.clone())
    }

    pub fn bends(&self) -> usize {
        self.segments.len() - 1
    }

    pub fn bend_points(&self) -> Vec<Point> {
        self.segments
            .iter()
            .filter_map(|s| s.start.clone())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaResult {
    pub value: LaurentPoly,
    pub lines: Vec<BrokenLine>,
    pub order: u32,
}

impl ThetaResult {
    pub fn restrict_to_a(&self) -> LaurentPoly {
        restrict_to_a(&self.value)
    }
}

/// Sets every `X_i` to 1.
pub fn restrict_to_a(f: &LaurentPoly) -> LaurentPoly {
    let n = f.nvars() / 2;
    f.project(&(0..n).collect::<Vec<_>>())
}

fn m_part(exp: &LatticeVec) -> Point {
    Point::from_ints(exp[0], exp[1])
}

fn pair_m(exp: &LatticeVec, n: &LatticeVec) -> i64 {
    exp[0] * n[0] + exp[1] * n[1]
}

/// Coefficient of `z^{j·step}` in `f^e`.
fn bend_coefficient(
    d: &ScatteringDiagram,
    powers: &mut WallPowers,
    wall: usize,
    e: i64,
    j: i64,
) -> Result<BigInt> {
    let step = d.walls[wall].step(&d.form);
    let fe = powers.get(d, wall, e)?;
    Ok(fe.coeff(&step.scale(j)))
}

/// Whether the segment from `a` to `b` passes through the origin.
fn through_origin(a: &Point, b: &Point) -> bool {
    a.cross(b).is_zero() && !a.dot(b).is_positive()
}

/// Checks the four conditions of a broken line: unbounded first segment
/// with `z^{m₀}`, bends only on walls, each new monomial a term of the
/// wall-crossing image of the previous one, and arrival at the endpoint.
pub fn validate_broken_line(
    bl: &BrokenLine,
    d: &ScatteringDiagram,
) -> std::result::Result<(), String> {
    if d.rank() != 2 {
        return Err("broken lines are planar".into());
    }
    let first = bl.segments.first().ok_or("no segments")?;
    if first.exponent != bl.initial
        || !first.coeff.is_one()
        || first.start.is_some()
        || first.bend_wall.is_some()
    {
        return Err("first segment must be the unbounded z^m0 piece".into());
    }
    if m_part(&bl.initial).is_origin() {
        return Err("initial exponent has zero M part".into());
    }
    if let Some(w) = d.walls.iter().position(|w| w.contains_point(&bl.endpoint)) {
        return Err(format!("endpoint lies on wall {w}"));
    }
    let mut powers = WallPowers::default();
    for (i, pair) in bl.segments.windows(2).enumerate() {
        let (prev, seg) = (&pair[0], &pair[1]);
        let (Some(b), Some(w)) = (&seg.start, seg.bend_wall) else {
            return Err(format!("segment {} has no bend data", i + 2));
        };
        let wall = d
            .walls
            .get(w)
            .ok_or(format!("segment {}: unknown wall {w}", i + 2))?;
        if b.is_origin() || !wall.contains_point(b) {
            return Err(format!("bend {} at {b} is not on wall {w}", i + 1));
        }
        if let Some(a) = &prev.start {
            let mv = b.sub(a);
            let mu = m_part(&prev.exponent);
            if !mv.cross(&mu).is_zero() || !mv.dot(&mu).is_negative() {
                return Err(format!("segment {} does not run along −μ", i + 1));
            }
            if through_origin(a, b) {
                return Err(format!("segment {} passes through the origin", i + 1));
            }
        }
        let diff = &seg.exponent - &prev.exponent;
        let step = wall.step(&d.form);
        let Some((prim, j)) = diff.primitive() else {
            return Err(format!("bend {} does not change the exponent", i + 1));
        };
        if prim != step || j < 1 {
            return Err(format!(
                "bend {}: exponent change {diff} is not a multiple of {step}",
                i + 1
            ));
        }
        let e = pair_m(&prev.exponent, &wall.normal).abs();
        if e == 0 {
            return Err(format!(
                "bend {}: monomial is invariant under the wall",
                i + 1
            ));
        }
        let c = bend_coefficient(d, &mut powers, w, e, j).map_err(|x| x.to_string())?;
        if c.is_zero() || seg.coeff != &prev.coeff * &c {
            return Err(format!(
                "bend {}: coefficient {} is not {} × {c}",
                i + 1,
                seg.coeff,
                prev.coeff
            ));
        }
    }
    let last = bl.last();
    if let Some(a) = &last.start {
        let mv = bl.endpoint.sub(a);
        let mu = m_part(&last.exponent);
        if !mv.cross(&mu).is_zero() || !mv.dot(&mu).is_negative() {
            return Err("last segment does not reach the endpoint along −μ".into());
        }
        if through_origin(a, &bl.endpoint) {
            return Err("last segment passes through the origin".into());
        }
    }
    Ok(())
}

struct BackBend {
    at: Point,
    wall: usize,
    /// Exponent after the bend.
    exponent: LatticeVec,
    factor: BigInt,
}

struct Search<'a> {
    d: &'a ScatteringDiagram,
    m0: &'a LatticeVec,
    powers: WallPowers,
    found: Vec<Vec<BackBend>>,
}

impl Search<'_> {
    fn run(
        &mut self,
        p: &Point,
        exp: &LatticeVec,
        rem: &LatticeVec,
        skip: Option<usize>,
        acc: &mut Vec<BackBend>,
    ) -> Result<()> {
        if rem.is_zero() {
            if exp == self.m0 {
                self.found.push(
                    acc.iter()
                        .map(|b| BackBend {
                            at: b.at.clone(),
                            wall: b.wall,
                            exponent: b.exponent.clone(),
                            factor: b.factor.clone(),
                        })
                        .collect(),
                );
            }
            return Ok(());
        }
        let mu = m_part(exp);
        if mu.is_origin() {
            return Ok(());
        }
        let mut hits = Vec::new();
        for (i, w) in self.d.walls.iter().enumerate() {
            if Some(i) == skip {
                continue;
            }
            for r in w.half_lines() {
                match segment_ray(p, &mu, &r, true) {
                    Hit::None => {}
                    Hit::At(t) => hits.push((t, i)),
                    Hit::Degenerate(why) => {
                        return Err(Error::NotGeneric(format!(
                            "a candidate broken line through {p} with exponent {exp}: {why}; perturb the endpoint"
                        )));
                    }
                }
            }
        }
        hits.sort();
        if hits.windows(2).any(|h| h[0].0 == h[1].0) {
            return Err(Error::NotGeneric(format!(
                "a candidate broken line from {p} meets two walls at once"
            )));
        }
        for (t, wi) in hits {
            let at = p.add(&mu.scale(&t));
            let w = &self.d.walls[wi];
            let step = w.step(&self.d.form);
            let mut j = 1;
            loop {
                let used = w.normal.scale(j);
                let left = rem - &used;
                if !left.is_nonnegative() {
                    break;
                }
                let prev = exp - &step.scale(j);
                let e = pair_m(&prev, &w.normal).abs();
                if e > 0 {
                    let c = bend_coefficient(self.d, &mut self.powers, wi, e, j)?;
                    if !c.is_zero() {
                        acc.push(BackBend {
                            at: at.clone(),
                            wall: wi,
                            exponent: exp.clone(),
                            factor: c,
                        });
                        self.run(&at, &prev, &left, Some(wi), acc)?;
                        acc.pop();
                    }
                }
                j += 1;
            }
        }
        Ok(())
    }
}

fn candidates(n: usize, k: i64) -> Vec<LatticeVec> {
    let mut out = Vec::new();
    let mut c = vec![0i64; n];
    loop {
        out.push(LatticeVec(c.clone()));
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            c[i] += 1;
            if c.iter().sum::<i64>() <= k {
                break;
            }
            c[i] = 0;
            i += 1;
        }
    }
}

/// All broken lines for `m₀` ending at `endpoint` whose final exponent is
/// `m₀ + p̃*(c, 0)` with `|c| ≤ k`.
///
/// If some candidate line would run through the origin, the endpoint is
/// moved slightly within its chamber and the search repeated; the returned
/// lines then end at the moved point.
pub fn enumerate_broken_lines(
    m0: &LatticeVec,
    endpoint: &Point,
    d: &ScatteringDiagram,
    k: u32,
) -> Result<Vec<BrokenLine>> {
    check_len(d.nvars(), m0.len())?;
    d.check_generic(endpoint)?;
    if m_part(m0).is_origin() {
        return Err(Error::Invalid(
            "initial exponent must have nonzero M part".into(),
        ));
    }
    if k > d.order {
        return Err(Error::Invalid(format!(
            "order {k} exceeds the diagram order {}",
            d.order
        )));
    }
    let first = match search_all(m0, endpoint, d, k) {
        Err(Error::NotGeneric(why)) => why,
        other => return other,
    };
    for q in nudges(endpoint) {
        let ccw = endpoint.cross(&q).is_positive();
        if d.check_generic(&q).is_err() || !arc_crossings(d, endpoint, &q, ccw, false)?.is_empty() {
            continue;
        }
        match search_all(m0, &q, d, k) {
            Err(Error::NotGeneric(_)) => continue,
            other => return other,
        }
    }
    Err(Error::NotGeneric(first))
}

fn nudges(q: &Point) -> Vec<Point> {
    let side = q.rot90();
    [97i64, 997, 9973, 99991]
        .iter()
        .flat_map(|&p| {
            let t = num_rational::BigRational::new(BigInt::one(), BigInt::from(p));
            [q.add(&side.scale(&t)), q.sub(&side.scale(&t))]
        })
        .collect()
}

fn search_all(
    m0: &LatticeVec,
    endpoint: &Point,
    d: &ScatteringDiagram,
    k: u32,
) -> Result<Vec<BrokenLine>> {
    let per: Vec<Result<Vec<BrokenLine>>> = candidates(d.rank(), k as i64)
        .into_par_iter()
        .map(|c| {
            let target = m0 + &d.form.tilde_p_star_n(&c)?;
            let mut s = Search {
                d,
                m0,
                powers: WallPowers::default(),
                found: Vec::new(),
            };
            s.run(endpoint, &target, &c, None, &mut Vec::new())?;
            Ok(s.found
                .into_iter()
                .map(|back| assemble(m0, endpoint, back))
                .collect())
        })
        .collect();
    let mut lines = Vec::new();
    for r in per {
        lines.extend(r?);
    }
    lines.sort_by(|a, b| line_key(a).cmp(&line_key(b)));
    Ok(lines)
}

fn line_key(l: &BrokenLine) -> (LatticeVec, Vec<LatticeVec>) {
    (
        l.last().exponent.clone(),
        l.segments.iter().map(|s| s.exponent.clone()).collect(),
    )
}

fn assemble(m0: &LatticeVec, endpoint: &Point, mut back: Vec<BackBend>) -> BrokenLine {
    back.reverse();
    let mut segments = vec![Segment {
        coeff: BigInt::one(),
        exponent: m0.clone(),
        start: None,
        bend_wall: None,
    }];
    let mut coeff = BigInt::one();
    for b in back {
        coeff *= &b.factor;
        segments.push(Segment {
            coeff: coeff.clone(),
            exponent: b.exponent,
            start: Some(b.at),
            bend_wall: Some(b.wall),
        });
    }
    BrokenLine {
        initial: m0.clone(),
        endpoint: endpoint.clone(),
        segments,
    }
}

/// `ϑ_{Q,m₀} = Σ_γ Mono(γ)` over the lines of [`enumerate_broken_lines`].
pub fn theta_function(
    m0: &LatticeVec,
    endpoint: &Point,
    d: &ScatteringDiagram,
    k: u32,
) -> Result<ThetaResult> {
    let lines = enumerate_broken_lines(m0, endpoint, d, k)?;
    let mut value = LaurentPoly::zero(d.nvars());
    for l in &lines {
        value = value.add(&l.monomial());
    }
    Ok(ThetaResult {
        value,
        lines,
        order: k,
    })
}

/// Mutation depth searched when locating chambers of the cluster complex.
pub const CHAMBER_SEARCH_DEPTH: usize = 64;

fn lattice_direction(p: &Point) -> LatticeVec {
    let l = p.x.denom() * p.y.denom();
    let x = (&p.x * num_rational::BigRational::from_integer(l.clone())).to_integer();
    let y = (&p.y * num_rational::BigRational::from_integer(l)).to_integer();
    let g = num_integer::Integer::gcd(&x, &y);
    let to = |v: BigInt| -> i64 { i64::try_from(&(v / &g)).unwrap_or(i64::MAX) };
    LatticeVec(vec![to(x), to(y)])
}

/// `p_{γ,D}(z^{m₀})` along an arc from the chamber of `m₀` to the endpoint.
///
/// Both orientations are tried; the one whose crossed rays are all
/// g-vector rays of the cluster complex is used, so no badland ray is
/// crossed and the product is exact.
pub fn theta_via_path(
    m0: &LatticeVec,
    endpoint: &Point,
    d: &ScatteringDiagram,
) -> Result<LaurentPoly> {
    check_len(d.nvars(), m0.len())?;
    d.check_generic(endpoint)?;
    let from = m_part(m0);
    if from.is_origin() {
        return Ok(LaurentPoly::z(m0.clone()));
    }
    let (mm, _) = m0.halves();
    let q = lattice_direction(endpoint);
    let mut found = None;
    for depth in 0..=CHAMBER_SEARCH_DEPTH {
        let cx = cluster_complex(&d.form, depth)?;
        if cx.chamber_containing(&mm).is_some() && cx.chamber_containing(&q).is_some() {
            found = Some(cx);
            break;
        }
        if depth > 0 && cx.chambers.len() == cluster_complex(&d.form, depth - 1)?.chambers.len() {
            break;
        }
    }
    let cx = found.ok_or_else(|| {
        Error::Unsupported(format!("{mm} or the endpoint is not in the cluster complex within {CHAMBER_SEARCH_DEPTH} mutations"))
    })?;
    let rays: BTreeSet<LatticeVec> = cx
        .chambers
        .iter()
        .flat_map(|c| {
            c.generators
                .iter()
                .map(|g| g.primitive().map(|p| p.0).unwrap_or_else(|| g.clone()))
        })
        .collect();
    let max_degree = degree(m0) + d.order as i64;
    for ccw in [true, false] {
        let crossings = arc_crossings(d, &from, endpoint, ccw, true)?;
        let ok = crossings
            .iter()
            .all(|c| rays.contains(&lattice_direction(&c.at)));
        if ok {
            let mut powers = WallPowers::default();
            return apply_crossings(
                d,
                &crossings,
                &LaurentPoly::z(m0.clone()),
                max_degree,
                &mut powers,
            );
        }
    }
    Err(Error::Unsupported(
        "every arc to the endpoint crosses a ray outside the cluster complex".into(),
    ))
}
