//! Exact maximisers for contractions and bicliques, plus a greedy heuristic.
//!
//! The exact solvers refuse instances above their configured caps instead of
//! falling back to a heuristic. Among optimal witnesses they return the
//! lexicographically smallest one, and results do not depend on the number of
//! worker threads.

mod biclique;
mod contraction;
mod split;

use std::time::Duration;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::contraction::{ContractionError, ContractionSet};

pub use biclique::{max_balanced_biclique_exact, max_edge_biclique_exact, Biclique};
pub use contraction::{
    enumerate_valid_weak_contractions, greedy_weak_contraction, max_contraction_exact, max_weak_contraction_exact,
    WeakContractions,
};
pub use split::max_contraction_by_components;

pub const DEFAULT_EDGE_CAP: usize = 20;
pub const DEFAULT_SIDE_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    /// Largest edge count accepted by the contraction solvers.
    pub edge_cap: usize,
    /// Largest smaller-side size accepted by the biclique solvers.
    pub side_cap: usize,
    /// Worker threads for the parallel search; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { edge_cap: DEFAULT_EDGE_CAP, side_cap: DEFAULT_SIDE_CAP, threads: None }
    }
}

impl SolverConfig {
    pub fn with_threads(threads: usize) -> Self {
        SolverConfig { threads: Some(threads), ..Default::default() }
    }

    pub(crate) fn install<R: Send>(&self, job: impl FnOnce() -> R + Send) -> Result<R, SolveError> {
        match self.threads {
            None => Ok(job()),
            Some(t) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(t.max(1))
                    .build()
                    .map_err(|e| SolveError::ThreadPool(e.to_string()))?;
                Ok(pool.install(job))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("edge cap exceeded: {found} edges, cap-edges is {cap}")]
    EdgeCapExceeded { found: usize, cap: usize },
    #[error("side cap exceeded: smaller side has {found} vertices, cap is {cap}")]
    SideCapExceeded { found: usize, cap: usize },
    #[error("no feasible set exists for this tolerance")]
    Infeasible,
    #[error(transparent)]
    Contraction(#[from] ContractionError),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Contraction(ContractionSet),
    Biclique(Biclique),
}

impl Witness {
    pub fn contraction(&self) -> Option<&ContractionSet> {
        match self {
            Witness::Contraction(c) => Some(c),
            Witness::Biclique(_) => None,
        }
    }

    pub fn biclique(&self) -> Option<&Biclique> {
        match self {
            Witness::Biclique(b) => Some(b),
            Witness::Contraction(_) => None,
        }
    }
}

/// Outcome of a solver run. `explored` counts search nodes (or candidate
/// sets) examined and is deterministic; `elapsed` is wall-clock only.
#[derive(Debug, Clone, Serialize)]
pub struct SolveResult {
    pub objective: u64,
    pub witness: Witness,
    pub explored: u64,
    #[serde(rename = "elapsed_ms", serialize_with = "ser_millis")]
    pub elapsed: Duration,
}

impl SolveResult {
    /// Equality on everything except timing.
    pub fn same_outcome(&self, other: &SolveResult) -> bool {
        self.objective == other.objective && self.witness == other.witness && self.explored == other.explored
    }
}

fn ser_millis<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_millis() as u64)
}
