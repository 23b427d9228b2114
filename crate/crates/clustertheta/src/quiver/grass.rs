//! Quiver Grassmannians: point counts over finite fields, counting
//! polynomials, Euler characteristics and the Caldero–Chapoton function.
//!
//! Subrepresentations are enumerated vertex by vertex in the order `0..n`
//! (arrows go from lower to higher index). At a vertex with outgoing arrows
//! every subspace `U_t ⊇ W_t` of the right dimension is listed in reduced
//! echelon form, where `W_t` is the span of the images of the chosen `U_s`.
//! At a sink only the number of such subspaces matters, which is a Gaussian
//! binomial coefficient.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::field::{prime_power, prime_powers, FiniteField};
use super::rep::ExplicitRep;
use super::{DimVector, Quiver};
use crate::error::{check_len, Error, Result};
use crate::lattice::LatticeVec;
use crate::laurent::LaurentPoly;
use crate::limits::limits;
use crate::qpoly::QPoly;

type Row = Vec<u8>;

/// Number of `r`-dimensional subspaces of `F_q^m`, saturating at `u128::MAX`.
pub fn gaussian_count(m: usize, r: usize, q: u128) -> u128 {
    if r > m {
        return 0;
    }
    let mut g: u128 = 1;
    for i in 0..r {
        let num = q.checked_pow((m - i) as u32).map(|x| x - 1);
        let den = q.pow((i + 1) as u32) - 1;
        match num.and_then(|n| g.checked_mul(n)) {
            Some(x) => g = x / den,
            None => return u128::MAX,
        }
    }
    g
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
fn rref(f: &FiniteField, mut rows: Vec<Row>) -> (Vec<Row>, Vec<usize>) {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = f.inv(rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            let c = row[col];
            if r != rank && c != 0 {
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    (rows, pivots)
}

/// Increasing `r`-subsets of `0..m`.
fn pivot_patterns(m: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < r - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, m, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, r, &mut Vec::new(), &mut out);
    out
}

/// Calls `visit` on every echelon basis of `F_q^m` with the given pivots.
fn for_each_with_pivots(
    f: &FiniteField,
    m: usize,
    pivots: &[usize],
    mut visit: impl FnMut(&[Row]),
) {
    let free: Vec<(usize, usize)> = pivots
        .iter()
        .enumerate()
        .flat_map(|(i, &p)| {
            ((p + 1)..m)
                .filter(|j| !pivots.contains(j))
                .map(move |j| (i, j))
        })
        .collect();
    let mut rows: Vec<Row> = pivots
        .iter()
        .map(|&p| {
            let mut r = vec![0; m];
            r[p] = 1;
            r
        })
        .collect();
    let q = f.order() as u8;
    loop {
        visit(&rows);
        // odometer over the free entries
        let mut k = 0;
        loop {
            if k == free.len() {
                return;
            }
            let (i, j) = free[k];
            if (rows[i][j] as usize) + 1 < q as usize {
                rows[i][j] += 1;
                break;
            }
            rows[i][j] = 0;
            k += 1;
        }
    }
}

struct Counter<'a> {
    f: &'a FiniteField,
    dims: Vec<usize>,
    e: Vec<usize>,
    /// For each vertex, the incoming arrows as `(source, matrix over F_q)`.
    incoming: Vec<Vec<(usize, Vec<Row>)>>,
    non_sinks: Vec<usize>,
    sinks: Vec<usize>,
    q: u128,
}

impl Counter<'_> {
    fn image(&self, t: usize, chosen: &[Vec<Row>]) -> (Vec<Row>, Vec<usize>) {
        let mut rows = Vec::new();
        for (s, m) in &self.incoming[t] {
            for u in &chosen[*s] {
                let v: Row = m
                    .iter()
                    .map(|mr| {
                        mr.iter()
                            .zip(u)
                            .fold(0u8, |acc, (&a, &b)| self.f.add(acc, self.f.mul(a, b)))
                    })
                    .collect();
                rows.push(v);
            }
        }
        if rows.is_empty() {
            return (rows, Vec::new());
        }
        rref(self.f, rows)
    }

    fn sink_product(&self, chosen: &[Vec<Row>]) -> u128 {
        let mut total: u128 = 1;
        for &t in &self.sinks {
            let (w, _) = self.image(t, chosen);
            if w.len() > self.e[t] {
                return 0;
            }
            total = total.saturating_mul(gaussian_count(
                self.dims[t] - w.len(),
                self.e[t] - w.len(),
                self.q,
            ));
        }
        total
    }

    /// `W_t`, the complement coordinates, and the codimension still to choose.
    fn prepare(&self, level: usize, chosen: &[Vec<Row>]) -> Option<(Vec<Row>, Vec<usize>, usize)> {
        let t = self.non_sinks[level];
        let (w, piv) = self.image(t, chosen);
        if w.len() > self.e[t] {
            return None;
        }
        let comp: Vec<usize> = (0..self.dims[t]).filter(|c| !piv.contains(c)).collect();
        let r = self.e[t] - w.len();
        (r <= comp.len()).then_some((w, comp, r))
    }

    fn count_pattern(
        &self,
        level: usize,
        w: &[Row],
        comp: &[usize],
        pivots: &[usize],
        chosen: &mut Vec<Vec<Row>>,
    ) -> u128 {
        let t = self.non_sinks[level];
        let mut total: u128 = 0;
        for_each_with_pivots(self.f, comp.len(), pivots, |rows| {
            let mut basis = w.to_vec();
            for r in rows {
                let mut v = vec![0u8; self.dims[t]];
                for (k, &c) in comp.iter().enumerate() {
                    v[c] = r[k];
                }
                basis.push(v);
            }
            chosen[t] = basis;
            total = total.saturating_add(self.count_from(level + 1, chosen));
        });
        total
    }

    fn count_from(&self, level: usize, chosen: &mut Vec<Vec<Row>>) -> u128 {
        if level == self.non_sinks.len() {
            return self.sink_product(chosen);
        }
        let Some((w, comp, r)) = self.prepare(level, chosen) else {
            return 0;
        };
        pivot_patterns(comp.len(), r)
            .iter()
            .map(|p| self.count_pattern(level, &w, &comp, p, chosen))
            .fold(0u128, |a, b| a.saturating_add(b))
    }

    fn count(&self) -> u128 {
        let n = self.dims.len();
        if self.non_sinks.is_empty() {
            return self.sink_product(&vec![Vec::new(); n]);
        }
        let Some((w, comp, r)) = self.prepare(0, &vec![Vec::new(); n]) else {
            return 0;
        };
        pivot_patterns(comp.len(), r)
            .par_iter()
            .map(|p| {
                let mut chosen = vec![Vec::new(); n];
                self.count_pattern(0, &w, &comp, p, &mut chosen)
            })
            .reduce(|| 0, |a, b| a.saturating_add(b))
    }
}

/// Upper bound on the number of leaves visited when counting over `F_q`.
fn cell_estimate(quiver: &Quiver, dims: &[usize], e: &[usize], q: u128) -> u128 {
    (0..quiver.n_vertices())
        .filter(|&v| quiver.arrows().iter().any(|&(s, _)| s == v))
        .fold(1u128, |acc, v| {
            acc.saturating_mul(gaussian_count(dims[v], e[v], q))
        })
}

fn as_dims(e: &DimVector) -> Option<Vec<usize>> {
    e.coords()
        .iter()
        .map(|&x| usize::try_from(x).ok())
        .collect()
}

/// `|Gr_e(D)(F_q)|`: the number of subrepresentations of `D ⊗ F_q` with
/// dimension vector `e`.
pub fn subrep_count(
    quiver: &Quiver,
    rep: &ExplicitRep,
    e: &DimVector,
    field: &FiniteField,
) -> Result<u128> {
    rep.validate(quiver)?;
    check_len(quiver.n_vertices(), e.len())?;
    if let Some(p) = rep.p {
        if field.characteristic() as u64 != p {
            return Err(Error::Invalid(format!(
                "representation is defined in characteristic {p}, field has characteristic {}",
                field.characteristic()
            )));
        }
    }
    let Some(ev) = as_dims(e) else { return Ok(0) };
    if ev.iter().zip(&rep.dims).any(|(a, b)| a > b) {
        return Ok(0);
    }
    let q = field.order() as u128;
    let est = cell_estimate(quiver, &rep.dims, &ev, q);
    if est > limits().max_cells as u128 {
        return Err(Error::Resource(format!(
            "counting Gr_{e} over F_{q} visits up to {est} cells (limit {}, set CLUSTERTHETA_MAX_CELLS)",
            limits().max_cells
        )));
    }
    let n = quiver.n_vertices();
    let mut incoming = vec![Vec::new(); n];
    for (idx, &(s, t)) in quiver.arrows().iter().enumerate() {
        let m = rep
            .matrix(quiver, idx)
            .iter()
            .map(|r| r.iter().map(|&x| field.from_int(x)).collect())
            .collect();
        incoming[t].push((s, m));
    }
    let is_source_of_arrow = |v: usize| quiver.arrows().iter().any(|&(s, _)| s == v);
    let counter = Counter {
        f: field,
        dims: rep.dims.clone(),
        e: ev,
        incoming,
        non_sinks: (0..n).filter(|&v| is_source_of_arrow(v)).collect(),
        sinks: (0..n).filter(|&v| !is_source_of_arrow(v)).collect(),
        q,
    };
    Ok(counter.count())
}

/// A priori bound on `dim Gr_e(D)`: the tangent space at `U` is
/// `Hom(U, D/U)`, of dimension `⟨e, d−e⟩ + dim Ext(U, D/U)`, and
/// `Ext(D, D)` surjects onto `Ext(U, D/U)`.
pub fn dimension_bound(quiver: &Quiver, rep: &ExplicitRep, e: &DimVector) -> Result<i64> {
    let d = rep.dim_vector();
    let rest = &d - e;
    let ext_dd = rep.endomorphism_dim(quiver) as i64 - quiver.euler_form(&d, &d)?;
    let ambient: i64 = e
        .coords()
        .iter()
        .zip(rest.coords())
        .map(|(a, b)| a * b)
        .sum();
    Ok((quiver.euler_form(e, &rest)? + ext_dd).min(ambient))
}

/// Coefficients of the polynomial of degree `< xs.len()` through the points.
pub fn interpolate(xs: &[i64], ys: &[BigInt]) -> Vec<BigRational> {
    let n = xs.len();
    let x: Vec<BigRational> = xs
        .iter()
        .map(|&v| BigRational::from_integer(BigInt::from(v)))
        .collect();
    let mut dd: Vec<BigRational> = ys
        .iter()
        .map(|y| BigRational::from_integer(y.clone()))
        .collect();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (dd[i].clone() - dd[i - 1].clone()) / (x[i].clone() - x[i - j].clone());
        }
    }
    // Horner on the Newton form
    let mut coeffs = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut next = vec![BigRational::zero(); n];
        for k in 0..n {
            if coeffs[k].is_zero() {
                continue;
            }
            if k + 1 < n {
                next[k + 1] += coeffs[k].clone();
            }
            next[k] -= coeffs[k].clone() * x[i].clone();
        }
        next[0] += dd[i].clone();
        coeffs = next;
    }
    coeffs
}

/// Point counts of `Gr_e(D)` at the given field orders.
pub fn point_counts(
    quiver: &Quiver,
    rep: &ExplicitRep,
    e: &DimVector,
    orders: &[usize],
) -> Result<Vec<u128>> {
    orders
        .iter()
        .map(|&q| subrep_count(quiver, rep, e, &FiniteField::new(q)?))
        .collect()
}

/// The polynomial `P` with `P(q) = |Gr_e(D)(F_q)|`.
///
/// Counts at `δ + 2` prime powers are interpolated, where `δ` is
/// [`dimension_bound`]; the interpolant must have integer coefficients and
/// degree at most `δ`, so the extra point is a consistency check.
pub fn counting_polynomial(quiver: &Quiver, rep: &ExplicitRep, e: &DimVector) -> Result<QPoly> {
    check_len(quiver.n_vertices(), e.len())?;
    let d = rep.dim_vector();
    if !e.is_nonnegative() || !e.le(&d) {
        return Ok(QPoly::zero());
    }
    let delta = dimension_bound(quiver, rep, e)?;
    if delta < 0 {
        return Ok(QPoly::zero());
    }
    let npts = delta as usize + 2;
    let orders: Vec<usize> = prime_powers(256)
        .into_iter()
        .filter(|&q| {
            rep.p
                .map_or(true, |p| prime_power(q).map(|(pp, _)| pp as u64) == Some(p))
        })
        .take(npts)
        .collect();
    if orders.len() < npts {
        return Err(Error::Resource(format!(
            "need {npts} field orders, only {} available",
            orders.len()
        )));
    }
    let ys: Vec<BigInt> = point_counts(quiver, rep, e, &orders)?
        .into_iter()
        .map(BigInt::from)
        .collect();
    let xs: Vec<i64> = orders.iter().map(|&q| q as i64).collect();
    let coeffs = interpolate(&xs, &ys);
    if coeffs[npts - 1..].iter().any(|c| !c.is_zero()) {
        return Err(Error::PolynomialCount(format!(
            "counts of Gr_{e} at {xs:?} do not fit a polynomial of degree ≤ {delta}"
        )));
    }
    if coeffs.iter().any(|c| !c.is_integer()) {
        return Err(Error::PolynomialCount(format!(
            "counts of Gr_{e} interpolate to non-integer coefficients"
        )));
    }
    let ints: Vec<BigInt> = coeffs.iter().map(|c| c.to_integer()).collect();
    Ok(QPoly::from_coeffs(&ints))
}

/// `χ(Gr_e(D)) = P(1)`.
pub fn grassmannian_euler_char(
    quiver: &Quiver,
    rep: &ExplicitRep,
    e: &DimVector,
) -> Result<BigInt> {
    Ok(counting_polynomial(quiver, rep, e)?.at_one())
}

/// `Σ_e χ(Gr_e(D)) z^{(−g(d), 0) + p̃*(e, 0)}`, in the `2n` variables of
/// `M ⊕ N`. Without principal coefficients the `N` part is set to zero.
pub fn caldero_chapoton(
    quiver: &Quiver,
    rep: &ExplicitRep,
    with_principal: bool,
) -> Result<LaurentPoly> {
    rep.validate(quiver)?;
    let n = quiver.n_vertices();
    let d = rep.dim_vector();
    let form = quiver.skew_form();
    let base = quiver.g_map(&d)?.scale(-1);
    let mut out = LaurentPoly::zero(2 * n);
    let mut e = vec![0i64; n];
    loop {
        let ev = LatticeVec(e.clone());
        let chi = grassmannian_euler_char(quiver, rep, &ev)?;
        if !chi.is_zero() {
            let a = &base + &form.p_star(&ev)?;
            let x = if with_principal {
                ev.clone()
            } else {
                LatticeVec::zero(n)
            };
            out.add_term(a.concat(&x), chi);
        }
        // next e in the box 0 ≤ e ≤ d
        let mut k = 0;
        loop {
            if k == n {
                return Ok(out);
            }
            if e[k] < d[k] {
                e[k] += 1;
                break;
            }
            e[k] = 0;
            k += 1;
        }
    }
}
