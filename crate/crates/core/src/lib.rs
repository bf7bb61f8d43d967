//! Exact verification and optimization of distance-preserving contractions.
//!
//! A set `C` of edges is an `(alpha, beta)`-contraction of a weighted graph
//! `G` when contracting `C` (setting its edges to length zero) keeps every
//! pairwise distance at least `d(u, v) / alpha - beta`. The weak variant only
//! constrains pairs that do not end up merged, and requires `C != E`.
//!
//! Distances are exact rationals throughout.

pub mod contraction;
pub mod graph;
pub mod lab;
pub mod reductions;
pub mod solvers;

pub use contraction::{
    contract, is_contraction, is_weak_contraction, violation_witness, ContractionChecker, ContractionError,
    ContractionSet, Mode, Tolerance, Violation,
};
pub use graph::{parse_rational, BipartiteGraph, Distance, Graph, Rational};
pub use solvers::{Biclique, SolveError, SolveResult, SolverConfig, Witness};
