//! Auslander–Reiten components on dimension vectors.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{apply, DimVector, Quiver};
use crate::error::{Error, Result};
use crate::lattice::LatticeVec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Component {
    P,
    R,
    I,
}

/// An indecomposable located in the AR quiver.
///
/// `label = (a, t)` means `τ^{−t} P(a)` on the `P` side and `τ^t I(a)` on the
/// `I` side; regular nodes carry no label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ARNode {
    pub component: Component,
    pub label: Option<(usize, u32)>,
    pub dim: DimVector,
}

/// Default search bound for τ-orbits.
pub const DEFAULT_BOUND: u32 = 64;

impl Quiver {
    /// Locates `d` by iterating `Φ` towards the projectives and `Φ⁻¹` towards
    /// the injectives; a periodic orbit that meets neither is regular.
    pub fn classify_indecomposable(&self, d: &DimVector) -> Result<ARNode> {
        self.classify_with_bound(d, DEFAULT_BOUND)
    }

    pub fn classify_with_bound(&self, d: &DimVector, bound: u32) -> Result<ARNode> {
        self.validate_indecomposable(d)?;
        let proj: Vec<DimVector> = (0..self.n).map(|a| self.projective(a)).collect();
        let inj: Vec<DimVector> = (0..self.n).map(|a| self.injective(a)).collect();
        let phi = self.coxeter_matrix();
        let phi_inv = self.inverse_coxeter_matrix();
        let mut periodic = false;
        for (targets, m, comp) in [(&proj, &phi, Component::P), (&inj, &phi_inv, Component::I)] {
            let mut x = d.clone();
            let mut seen = BTreeSet::new();
            for t in 0..=bound {
                if let Some(a) = targets.iter().position(|p| *p == x) {
                    return Ok(ARNode {
                        component: comp,
                        label: Some((a, t)),
                        dim: d.clone(),
                    });
                }
                if !seen.insert(x.clone()) {
                    periodic = true;
                    break;
                }
                x = apply(m, &x);
                if x.is_zero() || !x.is_nonnegative() {
                    break;
                }
            }
        }
        if periodic {
            return Ok(ARNode {
                component: Component::R,
                label: None,
                dim: d.clone(),
            });
        }
        Err(Error::Inconclusive(format!(
            "τ-orbit of {d} unresolved within {bound} steps"
        )))
    }

    /// True when every indecomposable lies in the preprojective component.
    pub fn is_representation_finite(&self) -> bool {
        match self.kronecker_b() {
            Some(b) => b <= 1,
            None => self.is_a_path(),
        }
    }

    /// `(dim Hom(C,D), dim Ext¹(C,D))` from the vanishing rules between the
    /// components `P ≺ R ≺ I` and the Euler form.
    pub fn hom_ext_dims(&self, c: &DimVector, d: &DimVector) -> Result<(i64, i64)> {
        let chi = self.euler_form(c, d)?;
        let cc = self.component_of(c)?;
        let cd = self.component_of(d)?;
        use Component::*;
        let split = |hom_zero: bool| -> Result<(i64, i64)> {
            let (h, e) = if hom_zero { (0, -chi) } else { (chi, 0) };
            if h < 0 || e < 0 {
                return Err(Error::Unsupported(format!(
                    "vanishing rule contradicts χ({c},{d}) = {chi}"
                )));
            }
            Ok((h, e))
        };
        match (cc, cd) {
            (P, P) | (I, I) => Ok((chi.max(0), (-chi).max(0))),
            (R, R) => Err(Error::Unsupported(format!(
                "Hom/Ext between regular {c} and {d}"
            ))),
            // Ext¹(P, R) = Ext¹(P, I) = Ext¹(R, I) = 0
            (P, _) | (R, I) => split(false),
            // Hom(R, P) = Hom(I, P) = Hom(I, R) = 0
            (R, P) | (I, _) => split(true),
        }
    }

    fn component_of(&self, d: &DimVector) -> Result<Component> {
        Ok(self.classify_indecomposable(d)?.component)
    }

    /// The preprojective (`side = P`) or preinjective (`side = I`) component up
    /// to `τ`-power `bound`, built by knitting meshes from the (in)jectives.
    pub fn ar_component(&self, side: Component, bound: u32) -> Result<ARComponent> {
        let (starts, m): (Vec<DimVector>, Vec<Vec<i64>>) = match side {
            Component::P => (
                (0..self.n).map(|a| self.projective(a)).collect(),
                self.inverse_coxeter_matrix(),
            ),
            Component::I => (
                (0..self.n).map(|a| self.injective(a)).collect(),
                self.coxeter_matrix(),
            ),
            Component::R => {
                return Err(Error::Unsupported(
                    "regular components are not knitted".into(),
                ))
            }
        };
        let mut index: BTreeMap<(usize, u32), usize> = BTreeMap::new();
        let mut nodes = Vec::new();
        for (a, start) in starts.iter().enumerate() {
            let mut x = start.clone();
            for t in 0..=bound {
                index.insert((a, t), nodes.len());
                nodes.push(ARNode {
                    component: side,
                    label: Some((a, t)),
                    dim: x.clone(),
                });
                let y = apply(&m, &x);
                if y.is_zero() || !y.is_nonnegative() {
                    break;
                }
                x = y;
            }
        }
        let mut edges: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for &(i, j) in &self.arrows {
            for t in 0..=bound {
                let pairs = match side {
                    // P(j) → P(i) at each level, and P(i) → τ⁻¹P(j)
                    Component::P => [((j, t), (i, t)), ((i, t), (j, t + 1))],
                    // I(j) → I(i) at each level, and τI(i) → I(j)
                    _ => [((j, t), (i, t)), ((i, t + 1), (j, t))],
                };
                for (u, v) in pairs {
                    if let (Some(&a), Some(&b)) = (index.get(&u), index.get(&v)) {
                        *edges.entry((a, b)).or_insert(0) += 1;
                    }
                }
            }
        }
        let mut comp = ARComponent {
            side,
            nodes,
            edges: edges.into_iter().map(|((a, b), m)| (a, b, m)).collect(),
        };
        if self.is_representation_finite() && side == Component::P {
            comp.merge_duplicates();
        }
        Ok(comp)
    }

    /// Whether `v ≺ w`: reachability inside a component, `P ≺ R ≺ I` across.
    ///
    /// Two regular nodes are never related here; tubes are not modelled.
    pub fn is_predecessor(&self, v: &ARNode, w: &ARNode) -> bool {
        if v.component != w.component {
            return v.component < w.component;
        }
        if v.dim == w.dim || v.component == Component::R {
            return false;
        }
        let bound = [v, w]
            .iter()
            .filter_map(|x| x.label.map(|l| l.1))
            .max()
            .unwrap_or(0)
            + 1;
        match self.ar_component(v.component, bound) {
            Ok(g) => g.reaches(&v.dim, &w.dim),
            Err(_) => false,
        }
    }
}

/// Finite piece of an AR component with irreducible-map multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ARComponent {
    pub side: Component,
    pub nodes: Vec<ARNode>,
    /// `(from, to, multiplicity)` as node indices.
    pub edges: Vec<(usize, usize, u32)>,
}

impl ARComponent {
    pub fn find(&self, dim: &LatticeVec) -> Option<usize> {
        self.nodes.iter().position(|n| n.dim == *dim)
    }

    pub fn reaches(&self, from: &LatticeVec, to: &LatticeVec) -> bool {
        let (Some(a), Some(b)) = (self.find(from), self.find(to)) else {
            return false;
        };
        let mut seen = vec![false; self.nodes.len()];
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            for &(s, t, _) in &self.edges {
                if s == x && !seen[t] {
                    if t == b {
                        return true;
                    }
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        false
    }

    /// Kahn's algorithm; true when the arrow graph has no oriented cycle.
    pub fn is_acyclic(&self) -> bool {
        let n = self.nodes.len();
        let mut indeg = vec![0usize; n];
        for &(_, t, _) in &self.edges {
            indeg[t] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut count = 0;
        while let Some(x) = queue.pop_front() {
            count += 1;
            for &(s, t, _) in &self.edges {
                if s == x {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        queue.push_back(t);
                    }
                }
            }
        }
        count == n
    }

    // Knitting stops at injectives; equal dimension vectors are the same module.
    fn merge_duplicates(&mut self) {
        let mut keep: Vec<usize> = Vec::new();
        let mut remap = vec![0; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            match keep.iter().position(|&k| self.nodes[k].dim == node.dim) {
                Some(p) => remap[i] = p,
                None => {
                    remap[i] = keep.len();
                    keep.push(i);
                }
            }
        }
        let nodes = keep.iter().map(|&k| self.nodes[k].clone()).collect();
        let mut edges: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for &(s, t, m) in &self.edges {
            let e = edges.entry((remap[s], remap[t])).or_insert(0);
            *e = (*e).max(m);
        }
        self.nodes = nodes;
        self.edges = edges.into_iter().map(|((a, b), m)| (a, b, m)).collect();
    }
}
