//! Hall-algebra wall crossing seen through the integration map.
//!
//! Every class is represented by its Poincaré polynomial in `q`; the stratum
//! of one bend is `A^{λγ} × Gr(λ, η − γ)` with `η` a Hom dimension and `γ`
//! an Ext dimension, so its polynomial is `q^{λγ}·[η−γ choose λ]_q`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::brokenlines::{theta_function, BrokenLine};
use crate::error::{check_len, Error, Result};
use crate::lattice::LatticeVec;
use crate::laurent::LaurentPoly;
use crate::qpoly::{QPoly, RatQ};
use crate::quiver::{Component, DimVector, Quiver};
use crate::scattering::plane::Point;
use crate::scattering::{rank2_diagram, ScatteringDiagram};

/// Gaussian binomial `[a choose b]_q`; zero outside `0 ≤ b ≤ a`.
pub fn qbinom(a: i64, b: i64) -> QPoly {
    if b < 0 || a < 0 || b > a {
        return QPoly::zero();
    }
    // row a of the q-Pascal triangle: [a,b] = [a−1,b−1] + q^b [a−1,b]
    let mut row = vec![QPoly::one()];
    for n in 1..=a as usize {
        let mut next = vec![QPoly::one(); n + 1];
        for k in 1..n {
            next[k] = row[k - 1].add(&QPoly::q_pow(k as i64).mul(&row[k]));
        }
        row = next;
    }
    row.swap_remove(b as usize)
}

/// `[GL_d] = q^{d(d−1)/2} ∏_{k=1}^{d} (q^k − 1)`.
pub fn gl_poincare(d: u32) -> QPoly {
    let d = d as i64;
    (1..=d).fold(QPoly::q_pow(d * (d - 1) / 2), |acc, k| {
        acc.mul(&QPoly::q_pow(k).sub(&QPoly::one()))
    })
}

/// Image of `∏_l [B GL_{r_l}]` with the block product twist:
/// `1 / (∏_l [GL_{r_l}] · q^{Σ_{u<v} r_u r_v})`.
pub fn block_inverse_chi(parts: &[u32]) -> Result<RatQ> {
    if parts.contains(&0) {
        return Err(Error::Invalid("block sizes must be positive".into()));
    }
    let mut cross = 0i64;
    for (u, &a) in parts.iter().enumerate() {
        for &b in &parts[u + 1..] {
            cross += a as i64 * b as i64;
        }
    }
    let den = parts
        .iter()
        .fold(QPoly::q_pow(cross), |acc, &r| acc.mul(&gl_poincare(r)));
    Ok(RatQ::new(QPoly::one(), den))
}

/// The power of `q` picked up when `z^{(m, n)}` passes a class of dimension `d`: `−m·d`.
pub fn commute_monomial(m: &LatticeVec, d: &DimVector) -> Result<i64> {
    check_len(m.len(), d.len())?;
    Ok(-m.dot(d))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationStep {
    pub c: DimVector,
    pub lambda: i64,
}

/// `0 ⊂ V_1 ⊂ … ⊂ V_s` with `V_j / V_{j−1} ≅ C_j^{⊕λ_j}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Filtration {
    pub steps: Vec<FiltrationStep>,
}

impl Filtration {
    /// `dim V_j` for every `j`.
    pub fn partial_dims(&self, n: usize) -> Vec<DimVector> {
        let mut acc = LatticeVec::zero(n);
        self.steps
            .iter()
            .map(|s| {
                acc = &acc + &s.c.scale(s.lambda);
                acc.clone()
            })
            .collect()
    }

    pub fn dim(&self, n: usize) -> DimVector {
        self.partial_dims(n)
            .pop()
            .unwrap_or_else(|| LatticeVec::zero(n))
    }
}

impl fmt::Display for Filtration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0")?;
        let n = self.steps.first().map_or(0, |s| s.c.len());
        for (s, v) in self.steps.iter().zip(self.partial_dims(n)) {
            write!(f, " ⊂ {v} [+{}·{}]", s.lambda, s.c)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    pub affine_exponent: i64,
    pub lambda: i64,
    pub ambient: i64,
    pub qpoly: QPoly,
}

impl Stratum {
    pub fn new(affine_exponent: i64, lambda: i64, ambient: i64) -> Self {
        let qpoly = QPoly::q_pow(affine_exponent).mul(&qbinom(ambient, lambda));
        Stratum {
            affine_exponent,
            lambda,
            ambient,
            qpoly,
        }
    }

    pub fn trivial() -> Self {
        Stratum::new(0, 0, 0)
    }
}

fn non_regular(q: &Quiver, c: &DimVector) -> Result<()> {
    if q.classify_indecomposable(c)?.component == Component::R {
        return Err(Error::Unsupported(format!(
            "bending on the regular wall {c}"
        )));
    }
    Ok(())
}

/// The first bend at the wall `c_1^⊥` taking `λ_1` copies of `C_1`: the
/// stratum is `Gr(λ_1, Hom(C_1, D))`.
pub fn first_bending(
    q: &Quiver,
    d: &DimVector,
    c1: &DimVector,
    lambda: i64,
) -> Result<(Stratum, Filtration)> {
    if lambda == 0 {
        return Ok((Stratum::trivial(), Filtration::default()));
    }
    if lambda < 0 {
        return Err(Error::Invalid(format!("negative multiplicity {lambda}")));
    }
    non_regular(q, c1)?;
    let (hom, _) = q.hom_ext_dims(c1, d)?;
    if hom == 0 {
        return Err(Error::NoBending(format!("Hom({c1}, {d}) = 0")));
    }
    let filt = Filtration {
        steps: vec![FiltrationStep {
            c: c1.clone(),
            lambda,
        }],
    };
    Ok((Stratum::new(0, lambda, hom), filt))
}

/// How a bend sits relative to the previous one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BendCase {
    First,
    /// `{c_{j−1}, c_j} = 0` and all Hom and Ext between them vanish.
    Joint,
    /// `{c_{j−1}, c_j} > 0` with `Hom(C_{j−1}, C_j) = Ext¹(C_j, C_{j−1}) = 0`.
    Good,
    /// Neither; the stratum is still computed by the same formula.
    Outside,
}

fn bend_case(q: &Quiver, prev: Option<&DimVector>, cj: &DimVector) -> Result<BendCase> {
    let Some(ci) = prev else {
        return Ok(BendCase::First);
    };
    let s = -q.skew_form().pair(ci, cj)?;
    let (h_ij, e_ij) = q.hom_ext_dims(ci, cj)?;
    let (h_ji, e_ji) = q.hom_ext_dims(cj, ci)?;
    Ok(match s {
        0 if h_ij == 0 && e_ij == 0 && h_ji == 0 && e_ji == 0 => BendCase::Joint,
        s if s < 0 && h_ij == 0 && e_ji == 0 => BendCase::Good,
        _ => BendCase::Outside,
    })
}

/// `q^{λγ}·[η−γ choose λ]_q` with `η = χ(C_j, D/V_{j−1})` and
/// `γ = Σ_ℓ λ_ℓ dim Ext¹(C_ℓ, C_j)`.
fn bend_stratum(
    q: &Quiver,
    d: &DimVector,
    filt: &Filtration,
    cj: &DimVector,
    lambda: i64,
) -> Result<Stratum> {
    if filt.steps.is_empty() {
        return first_bending(q, d, cj, lambda).map(|r| r.0);
    }
    let v = filt.dim(d.len());
    let eta = q.euler_form(cj, &(d - &v))?;
    let mut gamma = 0;
    for s in &filt.steps {
        gamma += s.lambda * q.hom_ext_dims(&s.c, cj)?.1;
    }
    Ok(Stratum::new(lambda * gamma, lambda, eta - gamma))
}

/// A later bend at `c_j^⊥`: `η = dim Hom(C_j, D/V_{j−1})`, read off the Euler
/// form, and `γ = Σ_ℓ λ_ℓ dim Ext¹(C_ℓ, C_j)`. The crossing must fall in
/// one of the two admissible cases.
pub fn next_bending(
    q: &Quiver,
    d: &DimVector,
    filt: &Filtration,
    cj: &DimVector,
    lambda: i64,
) -> Result<(Stratum, Filtration)> {
    let Some(prev) = filt.steps.last() else {
        return first_bending(q, d, cj, lambda);
    };
    if lambda == 0 {
        return Ok((Stratum::trivial(), filt.clone()));
    }
    if lambda < 0 {
        return Err(Error::Invalid(format!("negative multiplicity {lambda}")));
    }
    non_regular(q, cj)?;
    if bend_case(q, Some(&prev.c), cj)? == BendCase::Outside {
        return Err(Error::NotAdmissible(format!(
            "bend from {}^⊥ to {cj}^⊥ is in neither admissible case",
            prev.c
        )));
    }
    let stratum = bend_stratum(q, d, filt, cj, lambda)?;
    let mut next = filt.clone();
    next.steps.push(FiltrationStep {
        c: cj.clone(),
        lambda,
    });
    Ok((stratum, next))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineStrata {
    pub filtration: Filtration,
    pub strata: Vec<Stratum>,
    pub cases: Vec<BendCase>,
    pub qpoly: QPoly,
}

impl LineStrata {
    pub fn admissible(&self) -> bool {
        !self.cases.contains(&BendCase::Outside)
    }
}

/// Strata of every bend of `bl` in the diagram it was built in.
///
/// Each bend must be a positive crossing of a non-regular wall; its normal
/// is `c_j` and the multiple of `p̃*(c_j, 0)` gained is `λ_j`. Bends in
/// neither admissible case are kept and flagged in `cases`.
pub fn broken_line_strata(
    bl: &BrokenLine,
    diagram: &ScatteringDiagram,
    q: &Quiver,
    d: &DimVector,
) -> Result<LineStrata> {
    let mut filt = Filtration::default();
    let mut strata = Vec::new();
    let mut cases = Vec::new();
    let mut total = QPoly::one();
    for pair in bl.segments.windows(2) {
        let (prev, seg) = (&pair[0], &pair[1]);
        let w = seg
            .bend_wall
            .ok_or_else(|| Error::Invalid("bend without a wall".into()))?;
        let wall = diagram
            .walls
            .get(w)
            .ok_or_else(|| Error::Invalid(format!("unknown wall {w}")))?;
        let c = &wall.normal;
        let lambda = (&seg.exponent - &prev.exponent)
            .primitive()
            .map_or(0, |(_, j)| j);
        // velocity is −μ; positive means it agrees with the normal
        let along = -(prev.exponent[0] * c[0] + prev.exponent[1] * c[1]);
        if along <= 0 {
            return Err(Error::NotAdmissible(format!(
                "bend at {c}^⊥ is not a positive crossing"
            )));
        }
        non_regular(q, c)?;
        cases.push(bend_case(q, filt.steps.last().map(|s| &s.c), c)?);
        let s = bend_stratum(q, d, &filt, c, lambda)?;
        total = total.mul(&s.qpoly);
        strata.push(s);
        filt.steps.push(FiltrationStep {
            c: c.clone(),
            lambda,
        });
    }
    Ok(LineStrata {
        filtration: filt,
        strata,
        cases,
        qpoly: total,
    })
}

/// One broken line with its strata, or the reason it has none.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallLine {
    pub line: BrokenLine,
    pub strata: Option<LineStrata>,
    pub unrefined: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallTheta {
    pub value: LaurentPoly,
    /// Final exponent ↦ summed stratum polynomials, for exponents all of
    /// whose lines have strata.
    pub refined: BTreeMap<LatticeVec, QPoly>,
    pub lines: Vec<HallLine>,
}

/// `ϑ_{(−g(d), 0)}` at `endpoint` as `Σ_γ χ(strata of γ) z^{final(γ)}`.
///
/// Lines bending on a regular wall, or crossing a wall negatively, have no
/// strata; they contribute their ordinary coefficient and are marked.
pub fn hall_theta_chi(q: &Quiver, d: &DimVector, endpoint: &Point) -> Result<HallTheta> {
    if q.n_vertices() != 2 {
        return Err(Error::Unsupported("Hall theta functions are planar".into()));
    }
    if q.classify_indecomposable(d)?.component == Component::R {
        return Err(Error::Unsupported(format!(
            "−g({d}) is not in the cluster complex"
        )));
    }
    let form = q.skew_form();
    let k = d.total() as u32;
    let diagram = rank2_diagram(form.entry(0, 1), k.max(1))?;
    let m0 = q.g_map(d)?.scale(-1).concat(&LatticeVec::zero(2));
    let theta = theta_function(&m0, endpoint, &diagram, k)?;
    let strata: Vec<Result<LineStrata>> = theta
        .lines
        .par_iter()
        .map(|l| broken_line_strata(l, &diagram, q, d))
        .collect();
    let mut value = LaurentPoly::zero(4);
    let mut refined: BTreeMap<LatticeVec, Option<QPoly>> = BTreeMap::new();
    let mut lines = Vec::new();
    for (line, s) in theta.lines.into_iter().zip(strata) {
        let exp = line.last().exponent.clone();
        let slot = refined
            .entry(exp.clone())
            .or_insert_with(|| Some(QPoly::zero()));
        match s {
            Ok(s) => {
                value.add_term(exp, s.qpoly.at_one());
                if let Some(p) = slot {
                    *p = p.add(&s.qpoly);
                }
                lines.push(HallLine {
                    line,
                    strata: Some(s),
                    unrefined: None,
                });
            }
            Err(e @ (Error::Unsupported(_) | Error::NotAdmissible(_))) => {
                value.add_term(exp, line.last().coeff.clone());
                *slot = None;
                lines.push(HallLine {
                    line,
                    strata: None,
                    unrefined: Some(e.to_string()),
                });
            }
            Err(e) => return Err(e),
        }
    }
    let refined = refined
        .into_iter()
        .filter_map(|(e, p)| p.filter(|p| !p.is_zero()).map(|p| (e, p)))
        .collect();
    Ok(HallTheta {
        value,
        refined,
        lines,
    })
}

/// `Z = re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityValue {
    #[serde(with = "crate::scattering::plane::rational_str")]
    pub re: BigRational,
    #[serde(with = "crate::scattering::plane::rational_str")]
    pub im: BigRational,
}

impl StabilityValue {
    /// Whether `self` has strictly larger phase than `o` (both in the upper half plane).
    pub fn phase_above(&self, o: &StabilityValue) -> bool {
        (&self.re * &o.im - &self.im * &o.re).is_negative()
    }
}

impl fmt::Display for StabilityValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HnCheck {
    pub values: Vec<(DimVector, StabilityValue)>,
    pub decreasing: bool,
}

/// `Z(f) = (g(d) − p*(e))·f + i⟨Q, f⟩` on the quotient dimension vectors of
/// `filt`, and whether their phases strictly decrease.
pub fn hn_phases(
    filt: &Filtration,
    endpoint: &Point,
    q: &Quiver,
    d: &DimVector,
    e: &DimVector,
) -> Result<HnCheck> {
    if q.n_vertices() != 2 {
        return Err(Error::Unsupported(
            "stability phases are computed in rank 2".into(),
        ));
    }
    let re_cov = &q.g_map(d)? - &q.skew_form().p_star(e)?;
    let mut values = Vec::new();
    for s in &filt.steps {
        let re = BigRational::from_integer(BigInt::from(re_cov.dot(&s.c)));
        let im = endpoint.pair(&s.c);
        if !im.is_positive() {
            return Err(Error::Invalid(format!(
                "Im Z({}) = {im} is not positive",
                s.c
            )));
        }
        values.push((s.c.clone(), StabilityValue { re, im }));
    }
    let decreasing = values.windows(2).all(|w| w[0].1.phase_above(&w[1].1));
    Ok(HnCheck { values, decreasing })
}

/// Sign test for the torsion pair cut out by a covector: `Some(true)` for
/// the torsion side `⟨θ, f⟩ > 0`, `Some(false)` for the free side, `None`
/// on the wall itself.
pub fn torsion_side(theta: &LatticeVec, f: &DimVector) -> Option<bool> {
    match theta.dot(f) {
        0 => None,
        x => Some(x > 0),
    }
}
