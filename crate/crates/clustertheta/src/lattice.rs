//! Integer lattices, the skew form on `N` and its doubled version on `N ⊕ M`.
//!
//! Exponents of monomials live in `M ⊕ N` (length `2n`): the first `n`
//! coordinates are powers of `A_i`, the last `n` powers of `X_i`.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};

/// A vector in a free abelian group of fixed rank.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVec(pub Vec<i64>);

impl LatticeVec {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticeVec(coords)
    }

    pub fn zero(len: usize) -> Self {
        LatticeVec(vec![0; len])
    }

    /// The `i`-th basis vector (0-based).
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = vec![0; len];
        v[i] = 1;
        LatticeVec(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn scale(&self, k: i64) -> Self {
        LatticeVec(self.0.iter().map(|x| x * k).collect())
    }

    pub fn dot(&self, other: &LatticeVec) -> i64 {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Sum of coordinates.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Gcd of the coordinates (0 for the zero vector).
    pub fn content(&self) -> i64 {
        self.0.iter().fold(0i64, |g, &x| g.gcd(&x))
    }

    /// Splits `v = k·prim` with `prim` primitive and `k > 0`.
    pub fn primitive(&self) -> Option<(LatticeVec, i64)> {
        let g = self.content();
        if g == 0 {
            return None;
        }
        Some((LatticeVec(self.0.iter().map(|x| x / g).collect()), g))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn le(&self, other: &LatticeVec) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn concat(&self, other: &LatticeVec) -> LatticeVec {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        LatticeVec(v)
    }

    /// First half and second half of a doubled vector.
    pub fn halves(&self) -> (LatticeVec, LatticeVec) {
        let n = self.len() / 2;
        (
            LatticeVec(self.0[..n].to_vec()),
            LatticeVec(self.0[n..].to_vec()),
        )
    }

    /// Parses `1,-1,0,0`.
    pub fn parse(s: &str) -> Result<Self> {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Invalid(format!("not an integer: {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(LatticeVec)
    }
}

impl fmt::Display for LatticeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i64>> for LatticeVec {
    fn from(v: Vec<i64>) -> Self {
        LatticeVec(v)
    }
}

impl<const K: usize> From<[i64; K]> for LatticeVec {
    fn from(v: [i64; K]) -> Self {
        LatticeVec(v.to_vec())
    }
}

impl Index<usize> for LatticeVec {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &LatticeVec {
    type Output = LatticeVec;
    fn add(self, rhs: &LatticeVec) -> LatticeVec {
        debug_assert_eq!(self.len(), rhs.len());
        LatticeVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVec {
    type Output = LatticeVec;
    fn sub(self, rhs: &LatticeVec) -> LatticeVec {
        debug_assert_eq!(self.len(), rhs.len());
        LatticeVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVec {
    type Output = LatticeVec;
    fn neg(self) -> LatticeVec {
        LatticeVec(self.0.iter().map(|a| -a).collect())
    }
}

/// Skew-symmetric integer form `ε_ij = {e_i, e_j}` on `N`.
///
/// This is the transpose of the usual `B`-matrix convention.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct SkewForm {
    eps: Vec<Vec<i64>>,
}

impl TryFrom<Vec<Vec<i64>>> for SkewForm {
    type Error = Error;
    fn try_from(m: Vec<Vec<i64>>) -> Result<Self> {
        SkewForm::new(m)
    }
}

impl From<SkewForm> for Vec<Vec<i64>> {
    fn from(s: SkewForm) -> Self {
        s.eps
    }
}

impl SkewForm {
    pub fn new(eps: Vec<Vec<i64>>) -> Result<Self> {
        let n = eps.len();
        for row in &eps {
            check_len(n, row.len())?;
        }
        for i in 0..n {
            for j in 0..n {
                if eps[i][j] != -eps[j][i] {
                    return Err(Error::Invalid(format!(
                        "matrix is not skew-symmetric at ({},{})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(SkewForm { eps })
    }

    /// Imports a community `B`-matrix (`ε = Bᵀ`).
    pub fn from_b_matrix(b: Vec<Vec<i64>>) -> Result<Self> {
        let n = b.len();
        let mut t = vec![vec![0; n]; n];
        for (i, row) in b.iter().enumerate() {
            check_len(n, row.len())?;
            for (j, &x) in row.iter().enumerate() {
                t[j][i] = x;
            }
        }
        SkewForm::new(t)
    }

    /// `[[0, b], [-b, 0]]`, the form of the rank-2 algebra `A(b)`.
    pub fn rank2(b: i64) -> Self {
        SkewForm {
            eps: vec![vec![0, b], vec![-b, 0]],
        }
    }

    pub fn rank(&self) -> usize {
        self.eps.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.eps[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.eps
    }

    /// `{a, b} = Σ a_i ε_ij b_j`.
    pub fn pair(&self, a: &LatticeVec, b: &LatticeVec) -> Result<i64> {
        let n = self.rank();
        check_len(n, a.len())?;
        check_len(n, b.len())?;
        let mut s = 0;
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += a[i] * self.eps[i][j] * b[j];
            }
        }
        Ok(s)
    }

    /// `p*(n) = {n, ·} ∈ M`.
    pub fn p_star(&self, n: &LatticeVec) -> Result<LatticeVec> {
        let r = self.rank();
        check_len(r, n.len())?;
        Ok(LatticeVec(
            (0..r)
                .map(|j| (0..r).map(|i| n[i] * self.eps[i][j]).sum())
                .collect(),
        ))
    }

    /// Doubled form on `Ñ = N ⊕ M`:
    /// `{(n1,m1),(n2,m2)} = {n1,n2} + ⟨n1,m2⟩ − ⟨n2,m1⟩`.
    pub fn doubled_pair(&self, a: &LatticeVec, b: &LatticeVec) -> Result<i64> {
        let r = self.rank();
        check_len(2 * r, a.len())?;
        check_len(2 * r, b.len())?;
        let (n1, m1) = a.halves();
        let (n2, m2) = b.halves();
        Ok(self.pair(&n1, &n2)? + n1.dot(&m2) - n2.dot(&m1))
    }

    /// `p̃*(n,m) = {(n,m), ·}`, written in `M ⊕ N` as `(p*(n) − m, n)`.
    pub fn tilde_p_star(&self, v: &LatticeVec) -> Result<LatticeVec> {
        let r = self.rank();
        check_len(2 * r, v.len())?;
        let (n, m) = v.halves();
        Ok((&self.p_star(&n)? - &m).concat(&n))
    }

    /// `p̃*(n,0)` for `n ∈ N`.
    pub fn tilde_p_star_n(&self, n: &LatticeVec) -> Result<LatticeVec> {
        Ok(self.p_star(n)?.concat(n))
    }

    /// The doubled form as a `2n × 2n` matrix in the basis `(e_i,0), (0,f_i)`.
    pub fn doubled_matrix(&self) -> Vec<Vec<i64>> {
        let r = self.rank();
        let mut m = vec![vec![0; 2 * r]; 2 * r];
        for i in 0..r {
            for j in 0..r {
                m[i][j] = self.eps[i][j];
            }
            m[i][r + i] = 1;
            m[r + i][i] = -1;
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> LatticeVec {
        LatticeVec(x.to_vec())
    }

    #[test]
    fn doubled_pairing_kronecker() {
        let f = SkewForm::rank2(2);
        assert_eq!(
            f.doubled_pair(&v(&[1, 0, 0, 0]), &v(&[0, 1, 0, 0]))
                .unwrap(),
            2
        );
        // Follows the displayed formula: {(e1,0),(0,f1)} = ⟨e1,f1⟩ = 1.
        assert_eq!(
            f.doubled_pair(&v(&[1, 0, 0, 0]), &v(&[0, 0, 1, 0]))
                .unwrap(),
            1
        );
        let x = v(&[3, -1, 2, 5]);
        assert_eq!(f.doubled_pair(&x, &x).unwrap(), 0);
        assert!(f.doubled_pair(&v(&[1, 0]), &x).is_err());
    }

    #[test]
    fn doubled_matrix_agrees_with_pairing() {
        let f = SkewForm::new(vec![vec![0, 1, -2], vec![-1, 0, 3], vec![2, -3, 0]]).unwrap();
        let m = f.doubled_matrix();
        for i in 0..6 {
            for j in 0..6 {
                let p = f
                    .doubled_pair(&LatticeVec::unit(6, i), &LatticeVec::unit(6, j))
                    .unwrap();
                assert_eq!(p, m[i][j]);
            }
        }
    }

    #[test]
    fn p_star_examples() {
        let f = SkewForm::rank2(2);
        assert_eq!(f.p_star(&v(&[1, 0])).unwrap(), v(&[0, 2]));
        // independent evaluation: p*(n)_j = Σ_i n_i ε_ij with ε = [[0,2],[-2,0]]
        let n = [2i64, 4];
        let eps = [[0i64, 2], [-2, 0]];
        let manual: Vec<i64> = (0..2)
            .map(|j| n[0] * eps[0][j] + n[1] * eps[1][j])
            .collect();
        assert_eq!(manual, vec![-8, 4]);
        assert_eq!(f.p_star(&v(&n)).unwrap(), v(&manual));
        assert_eq!(f.p_star(&v(&[0, 0])).unwrap(), v(&[0, 0]));
    }

    #[test]
    fn tilde_p_star_examples() {
        let f = SkewForm::rank2(2);
        assert_eq!(f.tilde_p_star(&v(&[1, 0, 0, 0])).unwrap(), v(&[0, 2, 1, 0]));
        assert_eq!(
            f.tilde_p_star(&v(&[0, 1, 0, 0])).unwrap(),
            v(&[-2, 0, 0, 1])
        );
        assert_eq!(f.tilde_p_star(&v(&[0, 0, 0, 0])).unwrap(), v(&[0, 0, 0, 0]));
        // p̃*(v) pairs with w as {v, w}
        let a = v(&[1, -2, 3, 1]);
        let b = v(&[0, 4, -1, 2]);
        let img = f.tilde_p_star(&a).unwrap();
        let (bn, bm) = b.halves();
        let (im, inn) = img.halves();
        assert_eq!(im.dot(&bn) + inn.dot(&bm), f.doubled_pair(&a, &b).unwrap());
    }

    #[test]
    fn b_matrix_import_transposes() {
        let f = SkewForm::from_b_matrix(vec![vec![0, -2], vec![2, 0]]).unwrap();
        assert_eq!(f, SkewForm::rank2(2));
        assert!(SkewForm::new(vec![vec![0, 1], vec![1, 0]]).is_err());
    }

    #[test]
    fn primitive_split() {
        assert_eq!(v(&[2, 4]).primitive(), Some((v(&[1, 2]), 2)));
        assert_eq!(v(&[-3, 0]).primitive(), Some((v(&[-1, 0]), 3)));
        assert_eq!(v(&[0, 0]).primitive(), None);
    }
}
