//! Explicit representations with integer matrices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{DimVector, Quiver};
use crate::error::{check_len, Error, Result};
use crate::lattice::LatticeVec;

/// A representation given by one integer matrix per arrow.
///
/// The matrix of `α: s → t` has `dims[t]` rows and `dims[s]` columns and acts
/// on column vectors. Entries are read in whatever field the caller counts
/// over; `p` records the prime the data was written for, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplicitRep {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub dims: Vec<usize>,
    /// Keyed by 0-based arrow index, written as a string in JSON.
    pub maps: BTreeMap<String, Vec<Vec<i64>>>,
}

impl ExplicitRep {
    pub fn new(q: &Quiver, dims: Vec<usize>, maps: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        let rep = ExplicitRep {
            p: None,
            dims,
            maps: maps
                .into_iter()
                .enumerate()
                .map(|(i, m)| (i.to_string(), m))
                .collect(),
        };
        rep.validate(q)?;
        Ok(rep)
    }

    pub fn validate(&self, q: &Quiver) -> Result<()> {
        check_len(q.n_vertices(), self.dims.len())?;
        for (idx, &(s, t)) in q.arrows().iter().enumerate() {
            let Some(m) = self.map(idx) else { continue };
            // a matrix with zero columns may be written as []
            if m.is_empty() && self.dims[s] == 0 {
                continue;
            }
            if m.len() != self.dims[t] || m.iter().any(|row| row.len() != self.dims[s]) {
                return Err(Error::Invalid(format!(
                    "arrow {idx}: expected a {}×{} matrix",
                    self.dims[t], self.dims[s]
                )));
            }
        }
        if self
            .maps
            .keys()
            .any(|k| k.parse::<usize>().map_or(true, |i| i >= q.arrows().len()))
        {
            return Err(Error::Invalid("map keyed by an unknown arrow index".into()));
        }
        Ok(())
    }

    pub fn map(&self, arrow: usize) -> Option<&Vec<Vec<i64>>> {
        self.maps.get(&arrow.to_string())
    }

    /// Matrix of `arrow` with shape `dims[t] × dims[s]`, zero if absent.
    pub fn matrix(&self, q: &Quiver, arrow: usize) -> Vec<Vec<i64>> {
        let (s, t) = q.arrows()[arrow];
        match self.map(arrow) {
            Some(m) if !m.is_empty() => m.clone(),
            _ => vec![vec![0; self.dims[s]]; self.dims[t]],
        }
    }

    pub fn dim_vector(&self) -> DimVector {
        LatticeVec(self.dims.iter().map(|&x| x as i64).collect())
    }

    /// `dim End(D)` over the rationals.
    pub fn endomorphism_dim(&self, q: &Quiver) -> usize {
        // unknowns: entries of φ_v, equations D_α φ_s = φ_t D_α
        let mut offset = vec![0; self.dims.len() + 1];
        for (i, &d) in self.dims.iter().enumerate() {
            offset[i + 1] = offset[i] + d * d;
        }
        let nunk = offset[self.dims.len()];
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for (idx, &(s, t)) in q.arrows().iter().enumerate() {
            let m = self.matrix(q, idx);
            let (ds, dt) = (self.dims[s], self.dims[t]);
            for r in 0..dt {
                for c in 0..ds {
                    let mut eq = vec![BigRational::zero(); nunk];
                    // (D φ_s)_{rc} = Σ_k D_{rk} φ_s[k][c]
                    for k in 0..ds {
                        eq[offset[s] + k * ds + c] +=
                            BigRational::from_integer(BigInt::from(m[r][k]));
                    }
                    // (φ_t D)_{rc} = Σ_k φ_t[r][k] D_{kc}
                    for k in 0..dt {
                        eq[offset[t] + r * dt + k] -=
                            BigRational::from_integer(BigInt::from(m[k][c]));
                    }
                    rows.push(eq);
                }
            }
        }
        nunk - rational_rank(rows)
    }
}

pub(crate) fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = BigRational::one() / rows[rank][col].clone();
        for x in rows[rank].iter_mut() {
            *x *= inv.clone();
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= f.clone() * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// The Kronecker indecomposables with the explicit matrices of the classification.
///
/// `(n, n+1)`: `x ↦ (x, 0)` and `x ↦ (0, x)`; `(n+1, n)`: the two coordinate
/// projections; `(k, k)`: `μ·I` and the bidiagonal matrix with `1` on the
/// diagonal and `λ` above it.
pub fn kronecker_indecomposable(d: &DimVector, mu: i64, lambda: i64) -> Result<ExplicitRep> {
    check_len(2, d.len())?;
    let (a, b) = (d[0], d[1]);
    if a < 0 || b < 0 || (a == 0 && b == 0) || (a - b).abs() > 1 {
        return Err(Error::NotIndecomposable(format!(
            "{d} is not a Kronecker indecomposable"
        )));
    }
    let (a, b) = (a as usize, b as usize);
    let (f1, f2) = if b == a + 1 {
        let n = a;
        let mut f1 = vec![vec![0; n]; n + 1];
        let mut f2 = vec![vec![0; n]; n + 1];
        for i in 0..n {
            f1[i][i] = 1;
            f2[i + 1][i] = 1;
        }
        (f1, f2)
    } else if a == b + 1 {
        let n = b;
        let mut f1 = vec![vec![0; n + 1]; n];
        let mut f2 = vec![vec![0; n + 1]; n];
        for i in 0..n {
            f1[i][i] = 1;
            f2[i][i + 1] = 1;
        }
        (f1, f2)
    } else {
        let k = a;
        if k >= 2 && lambda == 0 {
            return Err(Error::NotIndecomposable(
                "λ = 0 splits the regular representation".into(),
            ));
        }
        let mut f1 = vec![vec![0; k]; k];
        let mut f2 = vec![vec![0; k]; k];
        for i in 0..k {
            f1[i][i] = mu;
            f2[i][i] = 1;
            if i + 1 < k {
                f2[i][i + 1] = lambda;
            }
        }
        (f1, f2)
    };
    ExplicitRep::new(&Quiver::kronecker(2), vec![a, b], vec![f1, f2])
}

/// The interval module of `1 → 2 → … → n` supported on `lo..=hi` (0-based).
pub fn interval_module(n: usize, lo: usize, hi: usize) -> Result<ExplicitRep> {
    if lo > hi || hi >= n {
        return Err(Error::NotIndecomposable(format!(
            "empty interval {}..{}",
            lo + 1,
            hi + 1
        )));
    }
    let dims: Vec<usize> = (0..n).map(|i| usize::from(i >= lo && i <= hi)).collect();
    let maps = (1..n)
        .map(|j| {
            let (s, t) = (j - 1, j);
            if dims[s] == 1 && dims[t] == 1 {
                vec![vec![1]]
            } else {
                vec![vec![0; dims[s]]; dims[t]]
            }
        })
        .collect();
    ExplicitRep::new(&Quiver::a(n), dims, maps)
}

/// An explicit indecomposable with dimension vector `d` for the quivers the
/// crate knows how to realize (Kronecker with two arrows, one-arrow
/// Kronecker, `A_n` paths).
pub fn standard_indecomposable(q: &Quiver, d: &DimVector) -> Result<ExplicitRep> {
    q.validate_indecomposable(d)?;
    if q.kronecker_b() == Some(2) {
        return kronecker_indecomposable(d, 1, 1);
    }
    if q.is_a_path() || q.kronecker_b() == Some(1) {
        let support: Vec<usize> = (0..q.n_vertices()).filter(|&i| d[i] != 0).collect();
        return interval_module(q.n_vertices(), support[0], *support.last().unwrap());
    }
    Err(Error::Unsupported(format!(
        "no explicit indecomposable construction for this quiver and {d}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(x: &[i64]) -> LatticeVec {
        LatticeVec(x.to_vec())
    }

    #[test]
    fn kronecker_matrices() {
        let r = kronecker_indecomposable(&lv(&[1, 2]), 1, 1).unwrap();
        assert_eq!(r.map(0).unwrap(), &vec![vec![1], vec![0]]);
        assert_eq!(r.map(1).unwrap(), &vec![vec![0], vec![1]]);
        let r = kronecker_indecomposable(&lv(&[1, 1]), 3, 5).unwrap();
        assert_eq!(r.map(0).unwrap(), &vec![vec![3]]);
        assert_eq!(r.map(1).unwrap(), &vec![vec![1]]);
        let r = kronecker_indecomposable(&lv(&[2, 1]), 1, 1).unwrap();
        assert_eq!(r.map(0).unwrap(), &vec![vec![1, 0]]);
        assert_eq!(r.map(1).unwrap(), &vec![vec![0, 1]]);
        assert!(kronecker_indecomposable(&lv(&[1, 3]), 1, 1).is_err());
    }

    #[test]
    fn endomorphisms_detect_bricks() {
        let k = Quiver::kronecker(2);
        for d in [[1, 2], [5, 6], [3, 2], [1, 1]] {
            let r = kronecker_indecomposable(&lv(&d), 1, 1).unwrap();
            assert_eq!(r.endomorphism_dim(&k), 1, "{d:?}");
        }
        // regular (k,k): End is k[x]/x^k
        let r = kronecker_indecomposable(&lv(&[3, 3]), 1, 1).unwrap();
        assert_eq!(r.endomorphism_dim(&k), 3);
        let m = interval_module(3, 0, 2).unwrap();
        assert_eq!(m.endomorphism_dim(&Quiver::a(3)), 1);
    }

    #[test]
    fn json_shape() {
        let r = kronecker_indecomposable(&lv(&[1, 2]), 1, 1).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"dims":[1,2],"maps":{"0":[[1],[0]],"1":[[0],[1]]}}"#);
        let back: ExplicitRep = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
