//! Acyclic quivers: Euler form, g-map, Coxeter transformation and
//! Auslander–Reiten data computed on dimension vectors.
//!
//! Vertices are 0-based internally and 1-based in all text and JSON. Arrows
//! always go from a smaller to a larger vertex.

mod ar;
pub mod field;
pub mod grass;
pub mod rep;

pub use ar::{ARComponent, ARNode, Component};

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::lattice::{LatticeVec, SkewForm};

pub type DimVector = LatticeVec;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "QuiverJson", into = "QuiverJson")]
pub struct Quiver {
    n: usize,
    arrows: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    vertices: usize,
    arrows: Vec<[usize; 2]>,
}

impl TryFrom<QuiverJson> for Quiver {
    type Error = Error;
    fn try_from(j: QuiverJson) -> Result<Self> {
        let mut arrows = Vec::new();
        for [s, t] in j.arrows {
            if s == 0 || t == 0 {
                return Err(Error::Invalid("vertices are numbered from 1".into()));
            }
            arrows.push((s - 1, t - 1));
        }
        Quiver::new(j.vertices, arrows)
    }
}

impl From<Quiver> for QuiverJson {
    fn from(q: Quiver) -> Self {
        QuiverJson {
            vertices: q.n,
            arrows: q.arrows.iter().map(|&(s, t)| [s + 1, t + 1]).collect(),
        }
    }
}

impl Quiver {
    /// Arrows are 0-based `(source, target)` pairs with `source < target`.
    pub fn new(n: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        for &(s, t) in &arrows {
            if t >= n || s >= t {
                return Err(Error::Invalid(format!(
                    "arrow {}→{} must satisfy source < target ≤ {n}",
                    s + 1,
                    t + 1
                )));
            }
        }
        Ok(Quiver { n, arrows })
    }

    /// `b` arrows `1 → 2`.
    pub fn kronecker(b: usize) -> Self {
        Quiver {
            n: 2,
            arrows: vec![(0, 1); b],
        }
    }

    /// The path `1 → 2 → … → n`.
    pub fn a(n: usize) -> Self {
        Quiver {
            n,
            arrows: (1..n).map(|i| (i - 1, i)).collect(),
        }
    }

    /// `kronecker{b}` or `a{n}`.
    pub fn named(name: &str) -> Result<Self> {
        if let Some(b) = name.strip_prefix("kronecker") {
            let b: usize = b
                .parse()
                .map_err(|_| Error::Invalid(format!("bad quiver name {name:?}")))?;
            return Ok(Quiver::kronecker(b));
        }
        if let Some(n) = name.strip_prefix('a') {
            let n: usize = n
                .parse()
                .map_err(|_| Error::Invalid(format!("bad quiver name {name:?}")))?;
            if n == 0 {
                return Err(Error::Invalid("a0 has no vertices".into()));
            }
            return Ok(Quiver::a(n));
        }
        Err(Error::Invalid(format!("unknown quiver {name:?}")))
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn arrow_count(&self, i: usize, j: usize) -> i64 {
        self.arrows.iter().filter(|&&a| a == (i, j)).count() as i64
    }

    /// Number of arrows if this is a generalized Kronecker quiver.
    pub fn kronecker_b(&self) -> Option<usize> {
        (self.n == 2 && self.arrows.iter().all(|&a| a == (0, 1))).then_some(self.arrows.len())
    }

    pub fn is_a_path(&self) -> bool {
        let mut a = self.arrows.clone();
        a.sort();
        a == (1..self.n).map(|i| (i - 1, i)).collect::<Vec<_>>()
    }

    /// Euler matrix `E = I − (arrow counts)`, so `χ(c,d) = cᵀ E d`.
    pub fn euler_matrix(&self) -> Vec<Vec<i64>> {
        let mut e = vec![vec![0; self.n]; self.n];
        for (i, row) in e.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(s, t) in &self.arrows {
            e[s][t] -= 1;
        }
        e
    }

    /// `χ(c,d) = Σ c_i d_i − Σ_{α:i→j} c_i d_j`.
    pub fn euler_form(&self, c: &LatticeVec, d: &LatticeVec) -> Result<i64> {
        check_len(self.n, c.len())?;
        check_len(self.n, d.len())?;
        let mut s = c.dot(d);
        for &(i, j) in &self.arrows {
            s -= c[i] * d[j];
        }
        Ok(s)
    }

    /// `g(d)_i = d_i − Σ_{α:i→j} d_j`, the covector `χ(·, d)`.
    pub fn g_map(&self, d: &LatticeVec) -> Result<LatticeVec> {
        check_len(self.n, d.len())?;
        let mut g = d.0.clone();
        for &(i, j) in &self.arrows {
            g[i] -= d[j];
        }
        Ok(LatticeVec(g))
    }

    /// `ε_ij = #(i→j) − #(j→i)`, so that `{a,b} = χ(b,a) − χ(a,b)`.
    pub fn skew_form(&self) -> SkewForm {
        let mut m = vec![vec![0; self.n]; self.n];
        for &(s, t) in &self.arrows {
            m[s][t] += 1;
            m[t][s] -= 1;
        }
        SkewForm::new(m).expect("antisymmetrized by construction")
    }

    /// `E⁻¹`, whose entry `(a, j)` counts paths `a → j`.
    pub fn path_counts(&self) -> Vec<Vec<i64>> {
        let n = self.n;
        let mut p = vec![vec![0i64; n]; n];
        for a in 0..n {
            p[a][a] = 1;
            for j in a + 1..n {
                p[a][j] = self
                    .arrows
                    .iter()
                    .filter(|&&(_, t)| t == j)
                    .map(|&(s, _)| p[a][s])
                    .sum();
            }
        }
        p
    }

    /// `dim P(a)`: paths starting at `a`.
    pub fn projective(&self, a: usize) -> DimVector {
        LatticeVec(self.path_counts()[a].clone())
    }

    /// `dim I(a)`: paths ending at `a`.
    pub fn injective(&self, a: usize) -> DimVector {
        let p = self.path_counts();
        LatticeVec((0..self.n).map(|j| p[j][a]).collect())
    }

    pub fn simple(&self, a: usize) -> DimVector {
        LatticeVec::unit(self.n, a)
    }

    /// Coxeter matrix `Φ = −E⁻¹Eᵀ`.
    pub fn coxeter_matrix(&self) -> Vec<Vec<i64>> {
        let einv = self.path_counts();
        let e = self.euler_matrix();
        let n = self.n;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| -(0..n).map(|k| einv[i][k] * e[j][k]).sum::<i64>())
                    .collect()
            })
            .collect()
    }

    /// `Φ⁻¹ = −E⁻ᵀE`.
    pub fn inverse_coxeter_matrix(&self) -> Vec<Vec<i64>> {
        let einv = self.path_counts();
        let e = self.euler_matrix();
        let n = self.n;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| -(0..n).map(|k| einv[k][i] * e[k][j]).sum::<i64>())
                    .collect()
            })
            .collect()
    }

    /// Dimension vector of `τ(D)` or `τ⁻¹(D)`.
    pub fn coxeter_translate(&self, d: &DimVector, dir: Translate) -> Result<DimVector> {
        check_len(self.n, d.len())?;
        let (m, special, what) = match dir {
            Translate::Tau => (
                self.coxeter_matrix(),
                (0..self.n).map(|a| self.projective(a)).collect::<Vec<_>>(),
                "projective",
            ),
            Translate::TauInverse => (
                self.inverse_coxeter_matrix(),
                (0..self.n).map(|a| self.injective(a)).collect(),
                "injective",
            ),
        };
        if special.contains(d) {
            return Err(Error::TranslateUndefined(format!("{d} is {what}")));
        }
        let r = apply(&m, d);
        if r.is_zero() || !r.is_nonnegative() || !d.is_nonnegative() || d.is_zero() {
            return Err(Error::TranslateUndefined(format!(
                "{d} is not a non-{what} indecomposable"
            )));
        }
        Ok(r)
    }

    /// Known indecomposable dimension vectors for Kronecker and `A_n` path quivers.
    pub fn validate_indecomposable(&self, d: &DimVector) -> Result<()> {
        check_len(self.n, d.len())?;
        if !d.is_nonnegative() || d.is_zero() {
            return Err(Error::NotIndecomposable(format!("{d}")));
        }
        let ok = if self.kronecker_b() == Some(2) {
            (d[0] - d[1]).abs() <= 1
        } else if self.kronecker_b() == Some(1) || self.is_a_path() {
            let support: Vec<usize> = (0..self.n).filter(|&i| d[i] != 0).collect();
            d.0.iter().all(|&x| x <= 1) && support.windows(2).all(|w| w[1] == w[0] + 1)
        } else {
            true
        };
        if ok {
            Ok(())
        } else {
            Err(Error::NotIndecomposable(format!(
                "{d} is not the dimension vector of an indecomposable"
            )))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Translate {
    Tau,
    TauInverse,
}

pub(crate) fn apply(m: &[Vec<i64>], d: &LatticeVec) -> LatticeVec {
    LatticeVec(
        m.iter()
            .map(|row| row.iter().zip(&d.0).map(|(a, b)| a * b).sum())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(x: &[i64]) -> LatticeVec {
        LatticeVec(x.to_vec())
    }

    #[test]
    fn euler_form_examples() {
        let k = Quiver::kronecker(2);
        assert_eq!(k.euler_form(&lv(&[1, 2]), &lv(&[5, 6])).unwrap(), 5);
        assert_eq!(k.euler_form(&lv(&[1, 0]), &lv(&[0, 1])).unwrap(), -2);
        let one = Quiver::new(1, vec![]).unwrap();
        assert_eq!(one.euler_form(&lv(&[4]), &lv(&[4])).unwrap(), 16);
    }

    #[test]
    fn g_map_examples() {
        let k = Quiver::kronecker(2);
        assert_eq!(k.g_map(&lv(&[5, 6])).unwrap(), lv(&[-7, 6]));
        for j in 0..5 {
            assert_eq!(k.g_map(&lv(&[j, j])).unwrap(), lv(&[-j, j]));
            // the formula, not the example line g(n,n+1) = (2−n, n+1)
            assert_eq!(k.g_map(&lv(&[j, j + 1])).unwrap(), lv(&[-j - 2, j + 1]));
            assert_eq!(k.g_map(&lv(&[j + 1, j])).unwrap(), lv(&[1 - j, j]));
        }
        assert_eq!(k.g_map(&lv(&[0, 0])).unwrap(), lv(&[0, 0]));
        // g(d) is the covector χ(·,d)
        let d = lv(&[3, 7]);
        let g = k.g_map(&d).unwrap();
        for c in [lv(&[1, 0]), lv(&[0, 1])] {
            assert_eq!(c.dot(&g), k.euler_form(&c, &d).unwrap());
        }
    }

    #[test]
    fn skew_form_is_antisymmetrized_euler_form() {
        let q = Quiver::new(3, vec![(0, 1), (0, 2), (1, 2), (1, 2)]).unwrap();
        let f = q.skew_form();
        let a = lv(&[2, -1, 3]);
        let b = lv(&[0, 4, 1]);
        assert_eq!(
            f.pair(&a, &b).unwrap(),
            q.euler_form(&b, &a).unwrap() - q.euler_form(&a, &b).unwrap()
        );
        assert_eq!(Quiver::kronecker(2).skew_form(), SkewForm::rank2(2));
    }

    #[test]
    fn coxeter_translate_kronecker() {
        let k = Quiver::kronecker(2);
        assert_eq!(
            k.coxeter_translate(&lv(&[2, 3]), Translate::Tau).unwrap(),
            lv(&[0, 1])
        );
        assert!(matches!(
            k.coxeter_translate(&lv(&[0, 1]), Translate::Tau),
            Err(Error::TranslateUndefined(_))
        ));
        assert!(matches!(
            k.coxeter_translate(&lv(&[1, 2]), Translate::Tau),
            Err(Error::TranslateUndefined(_))
        ));
        assert_eq!(
            k.coxeter_translate(&lv(&[0, 1]), Translate::TauInverse)
                .unwrap(),
            lv(&[2, 3])
        );
        assert!(k
            .coxeter_translate(&lv(&[1, 0]), Translate::TauInverse)
            .is_err());
        assert_eq!(
            k.coxeter_translate(&lv(&[3, 3]), Translate::Tau).unwrap(),
            lv(&[3, 3])
        );
    }

    #[test]
    fn projectives_and_injectives() {
        let k = Quiver::kronecker(2);
        assert_eq!(k.projective(0), lv(&[1, 2]));
        assert_eq!(k.projective(1), lv(&[0, 1]));
        assert_eq!(k.injective(0), lv(&[1, 0]));
        assert_eq!(k.injective(1), lv(&[2, 1]));
        let a3 = Quiver::a(3);
        assert_eq!(a3.projective(0), lv(&[1, 1, 1]));
        assert_eq!(a3.injective(2), lv(&[1, 1, 1]));
    }

    #[test]
    fn names_and_json() {
        assert_eq!(Quiver::named("kronecker2").unwrap(), Quiver::kronecker(2));
        assert_eq!(Quiver::named("a3").unwrap(), Quiver::a(3));
        assert!(Quiver::named("e8").is_err());
        let q: Quiver = serde_json::from_str(r#"{"vertices":2,"arrows":[[1,2],[1,2]]}"#).unwrap();
        assert_eq!(q, Quiver::kronecker(2));
        assert!(serde_json::from_str::<Quiver>(r#"{"vertices":2,"arrows":[[2,1]]}"#).is_err());
    }
}
