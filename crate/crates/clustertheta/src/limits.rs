//! Resource ceilings, overridable from the environment.
//!
//! `CLUSTERTHETA_MAX_TERMS` caps the number of terms any truncated series may hold.
//! `CLUSTERTHETA_MAX_CELLS` caps the number of subspaces enumerated by one point count.

use std::sync::OnceLock;

#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub max_terms: usize,
    pub max_cells: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_terms: 5_000_000,
            max_cells: 2_000_000_000,
        }
    }
}

impl Limits {
    pub fn from_env() -> Self {
        let mut l = Limits::default();
        if let Some(v) = std::env::var("CLUSTERTHETA_MAX_TERMS")
            .ok()
            .and_then(|s| s.parse().ok())
        {
            l.max_terms = v;
        }
        if let Some(v) = std::env::var("CLUSTERTHETA_MAX_CELLS")
            .ok()
            .and_then(|s| s.parse().ok())
        {
            l.max_cells = v;
        }
        l
    }
}

pub fn limits() -> Limits {
    static L: OnceLock<Limits> = OnceLock::new();
    *L.get_or_init(Limits::from_env)
}
