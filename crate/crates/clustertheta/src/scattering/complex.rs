//! Walls of the cluster complex, found by mutation.
//!
//! Each seed reached from the initial one spans a chamber whose generators
//! are its g-vectors; the facet opposite `g_k` lies in `c_k^⊥` and carries
//! `1 + z^{p̃*(|c_k|, 0)}`.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{ScatteringDiagram, Support, Wall};
use crate::cluster::TropicalSeed;
use crate::error::Result;
use crate::lattice::{LatticeVec, SkewForm};
use crate::series::GradedSeries;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chamber {
    /// g-vectors, in seed order.
    pub generators: Vec<LatticeVec>,
    /// c-vectors, in seed order; `normals[k]` is normal to the facet opposite `generators[k]`.
    pub normals: Vec<LatticeVec>,
    /// A mutation word (1-based) reaching the seed.
    pub word: Vec<usize>,
}

impl Chamber {
    /// `⟨g_i, c_j⟩ = δ_ij`.
    pub fn is_dual(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, g)| {
            self.normals
                .iter()
                .enumerate()
                .all(|(j, c)| g.dot(c) == i64::from(i == j))
        })
    }

    /// Whether `m` lies in the closed cone spanned by the generators.
    pub fn contains(&self, m: &LatticeVec) -> bool {
        in_cone(&self.generators, m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterComplex {
    pub form: SkewForm,
    pub depth: usize,
    pub chambers: Vec<Chamber>,
}

/// Chambers of every seed within `depth` mutations of the initial seed,
/// in breadth-first order.
pub fn cluster_complex(form: &SkewForm, depth: usize) -> Result<ClusterComplex> {
    let n = form.rank();
    let start = TropicalSeed::initial(form.clone());
    let key = |s: &TropicalSeed| s.g_vectors().iter().cloned().collect::<BTreeSet<_>>();
    let mut seen: HashSet<BTreeSet<LatticeVec>> = HashSet::from([key(&start)]);
    let mut queue = VecDeque::from([(start, 0usize)]);
    let mut chambers = Vec::new();
    while let Some((s, dist)) = queue.pop_front() {
        chambers.push(Chamber {
            generators: s.g_vectors().to_vec(),
            normals: s.c_vectors(),
            word: s.mutation_word().to_vec(),
        });
        if dist == depth {
            continue;
        }
        for k in 1..=n {
            let t = s.mutate(k)?;
            if seen.insert(key(&t)) {
                queue.push_back((t, dist + 1));
            }
        }
    }
    Ok(ClusterComplex {
        form: form.clone(),
        depth,
        chambers,
    })
}

impl ClusterComplex {
    /// Index of a chamber whose closure contains `m`.
    pub fn chamber_containing(&self, m: &LatticeVec) -> Option<usize> {
        self.chambers.iter().position(|c| c.contains(m))
    }

    /// The facet walls of all chambers, without repetition.
    pub fn walls(&self) -> Result<Vec<Wall>> {
        let n = self.form.rank();
        let order = self
            .chambers
            .iter()
            .flat_map(|c| {
                c.normals
                    .iter()
                    .map(|v| v.0.iter().map(|x| x.abs()).sum::<i64>())
            })
            .max()
            .unwrap_or(1) as u32;
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for ch in &self.chambers {
            for k in 0..n {
                let c = &ch.normals[k];
                let normal = if c.is_nonnegative() {
                    c.clone()
                } else {
                    c.scale(-1)
                };
                let mut gens: Vec<LatticeVec> = (0..n)
                    .filter(|&i| i != k)
                    .map(|i| ch.generators[i].clone())
                    .collect();
                gens.sort();
                let support = if n == 2 {
                    Support::Ray(gens[0].clone())
                } else {
                    Support::Cone(gens)
                };
                if !seen.insert((normal.clone(), support.clone())) {
                    continue;
                }
                let f = GradedSeries::binomial(
                    self.form.tilde_p_star_n(&normal)?,
                    BigInt::one(),
                    order,
                );
                out.push(Wall::new(&self.form, normal, support, f)?);
            }
        }
        Ok(out)
    }

    pub fn diagram(&self) -> Result<ScatteringDiagram> {
        let walls = self.walls()?;
        let order = walls.iter().map(|w| w.func.order()).max().unwrap_or(1);
        let mut d = ScatteringDiagram {
            form: self.form.clone(),
            order,
            walls,
        };
        d.normalize();
        Ok(d)
    }
}

pub fn cluster_complex_diagram(form: &SkewForm, depth: usize) -> Result<ScatteringDiagram> {
    cluster_complex(form, depth)?.diagram()
}

/// Whether `v` is a nonnegative combination of the linearly independent `gens`.
pub(crate) fn in_cone(gens: &[LatticeVec], v: &LatticeVec) -> bool {
    if gens.is_empty() {
        return v.is_zero();
    }
    let (rows, cols) = (v.len(), gens.len());
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| (0..cols).map(|c| q(gens[c][r])).chain([q(v[r])]).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            return false;
        };
        m.swap(rank, p);
        let inv = BigRational::one() / m[rank][col].clone();
        for x in m[rank].iter_mut() {
            *x *= inv.clone();
        }
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= f.clone() * y;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    // inconsistent rows make v leave the span
    if m[rank..].iter().any(|row| !row[cols].is_zero()) {
        return false;
    }
    (0..rank).all(|r| !m[r][cols].is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::is_sign_coherent;

    fn lv(x: &[i64]) -> LatticeVec {
        LatticeVec(x.to_vec())
    }

    #[test]
    fn finite_type_a2_closes_up() {
        let cx = cluster_complex(&SkewForm::rank2(1), 5).unwrap();
        assert_eq!(cx.chambers.len(), 5);
        let d = cx.diagram().unwrap();
        // five rays: the four half-axes and (1,-1)
        assert_eq!(d.walls.len(), 5);
        assert!(cx.chambers.iter().all(Chamber::is_dual));
    }

    #[test]
    fn depth_zero_is_positive_chamber() {
        let cx = cluster_complex(&SkewForm::rank2(2), 0).unwrap();
        assert_eq!(cx.chambers.len(), 1);
        assert_eq!(cx.chambers[0].generators, vec![lv(&[1, 0]), lv(&[0, 1])]);
        assert!(cx.chambers[0].contains(&lv(&[3, 2])));
        assert!(!cx.chambers[0].contains(&lv(&[3, -2])));
    }

    #[test]
    fn kronecker_chamber_between_two_and_three() {
        let cx = cluster_complex(&SkewForm::rank2(2), 4).unwrap();
        let want: BTreeSet<LatticeVec> = [lv(&[2, -1]), lv(&[3, -2])].into();
        assert!(cx
            .chambers
            .iter()
            .any(|c| c.generators.iter().cloned().collect::<BTreeSet<_>>() == want));
        for c in &cx.chambers {
            assert!(c.is_dual());
            assert!(c.normals.iter().all(is_sign_coherent));
        }
    }

    #[test]
    fn a3_cones() {
        let eps = SkewForm::new(vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]).unwrap();
        let cx = cluster_complex(&eps, 8).unwrap();
        assert_eq!(cx.chambers.len(), 14);
        assert!(cx.chambers.iter().all(Chamber::is_dual));
        assert!(in_cone(&[lv(&[1, 0, 0]), lv(&[0, 1, 0])], &lv(&[2, 3, 0])));
        assert!(!in_cone(&[lv(&[1, 0, 0]), lv(&[0, 1, 0])], &lv(&[2, 3, 1])));
    }
}
