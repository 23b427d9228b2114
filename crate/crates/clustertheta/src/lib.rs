//! Exact computations for cluster scattering diagrams.
//!
//! Seeds and mutation, consistent rank-2 scattering diagrams, broken lines and
//! theta functions, quiver representations with Auslander–Reiten data,
//! quiver-Grassmannian Euler characteristics, Caldero–Chapoton characters and
//! the q-polynomial strata attached to bends of broken lines.
//!
//! All arithmetic is over the integers or the rationals.

pub mod brokenlines;
pub mod cli;
pub mod cluster;
pub mod emit;
pub mod error;
pub mod hall;
pub mod lattice;
pub mod laurent;
pub mod limits;
pub mod qpoly;
pub mod quiver;
pub mod scattering;
pub mod series;

pub use error::{Error, Result};
pub use lattice::{LatticeVec, SkewForm};
pub use laurent::LaurentPoly;
pub use qpoly::{QPoly, RatQ};
pub use quiver::Quiver;
pub use series::GradedSeries;
