//! Edge contraction and the (alpha, beta) validity tests.
//!
//! Contracting an edge set `C` merges every connected component of `(V, C)`
//! into a supernode. The contracted distance `d_C(u, v)` is the shortest-path
//! distance between the supernodes of `u` and `v`; equivalently, the distance
//! in the original graph once every edge of `C` has length zero.
//!
//! `C` is an (alpha, beta)-contraction when `d_C(u, v) >= d(u, v) / alpha - beta`
//! for every pair, merged pairs included. A weak contraction must be a proper
//! subset of `E` and only needs the inequality on pairs with `d_C(u, v) != 0`.
//! The intended regime is `alpha >= 1`, but any positive alpha is accepted.

mod checker;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{shortest_distances, Distance, DistanceMatrix, Graph, Rational};

pub use checker::ContractionChecker;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContractionError {
    #[error("graph is disconnected; contraction validity is defined on connected graphs")]
    Disconnected,
    #[error("edge id {id} out of range for {edge_count} edges")]
    InvalidEdge { id: usize, edge_count: usize },
    #[error("vertex {vertex} out of range for {count} vertices")]
    InvalidVertex { vertex: usize, count: usize },
    #[error(transparent)]
    Tolerance(#[from] ToleranceError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToleranceError {
    #[error("alpha must be positive, got {0}")]
    Alpha(Rational),
    #[error("beta must be non-negative, got {0}")]
    Beta(Rational),
}

/// The pair (alpha, beta): multiplicative and additive slack.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tolerance {
    alpha: Rational,
    beta: Rational,
}

impl Tolerance {
    pub fn new(alpha: Rational, beta: Rational) -> Result<Self, ToleranceError> {
        if !alpha.is_positive() {
            return Err(ToleranceError::Alpha(alpha));
        }
        if beta.is_negative() {
            return Err(ToleranceError::Beta(beta));
        }
        Ok(Tolerance { alpha, beta })
    }

    /// alpha = 1: the additive tolerance `x - beta`.
    pub fn additive(beta: Rational) -> Result<Self, ToleranceError> {
        Tolerance::new(Rational::from_integer(1.into()), beta)
    }

    pub fn unit() -> Self {
        Tolerance::additive(Rational::from_integer(1.into())).unwrap()
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    /// Least contracted distance allowed for a pair at original distance `d`.
    pub fn lower_bound(&self, d: &Rational) -> Rational {
        d / &self.alpha - &self.beta
    }
}

/// Which of the two validity notions to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Strong,
    Weak,
}

/// A set of edge ids, kept sorted. The derived ordering is lexicographic on
/// the sorted id sequence, which is the tie-break used by the solvers.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ContractionSet {
    ids: Vec<usize>,
}

impl ContractionSet {
    pub fn new(ids: impl IntoIterator<Item = usize>) -> Self {
        let mut ids: Vec<usize> = ids.into_iter().collect();
        ids.sort_unstable();
        ids.dedup();
        ContractionSet { ids }
    }

    pub fn empty() -> Self {
        ContractionSet::default()
    }

    pub fn all(g: &Graph) -> Self {
        ContractionSet { ids: (0..g.edge_count()).collect() }
    }

    pub fn from_mask(mask: u64) -> Self {
        ContractionSet { ids: (0..64).filter(|i| mask >> i & 1 == 1).collect() }
    }

    /// Bit mask of the ids; `None` if any id is 64 or more.
    pub fn to_mask(&self) -> Option<u64> {
        self.ids.iter().try_fold(0u64, |m, &i| (i < 64).then(|| m | 1 << i))
    }

    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.ids.binary_search(&id).is_ok()
    }

    pub fn is_subset_of(&self, other: &ContractionSet) -> bool {
        self.ids.iter().all(|&i| other.contains(i))
    }

    pub fn validate(&self, g: &Graph) -> Result<(), ContractionError> {
        match self.ids.last() {
            Some(&id) if id >= g.edge_count() => Err(ContractionError::InvalidEdge { id, edge_count: g.edge_count() }),
            _ => Ok(()),
        }
    }

    pub(crate) fn membership(&self, edge_count: usize) -> Vec<bool> {
        let mut flags = vec![false; edge_count];
        for &i in &self.ids {
            flags[i] = true;
        }
        flags
    }
}

impl fmt::Display for ContractionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, id) in self.ids.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{id}")?;
        }
        f.write_str("}")
    }
}

/// Graph obtained by contracting an edge set.
#[derive(Debug, Clone)]
pub struct QuotientGraph {
    partition: Vec<usize>,
    supernodes: Graph,
    distances: DistanceMatrix,
}

impl QuotientGraph {
    /// Supernode of every original vertex. Supernodes are numbered in order of
    /// their smallest member.
    pub fn partition(&self) -> &[usize] {
        &self.partition
    }

    pub fn supernode_of(&self, v: usize) -> usize {
        self.partition[v]
    }

    pub fn supernode_count(&self) -> usize {
        self.supernodes.vertex_count()
    }

    /// The quotient itself: parallel edges collapsed to their minimum weight,
    /// self-loops dropped.
    pub fn graph(&self) -> &Graph {
        &self.supernodes
    }

    /// Distances between supernodes.
    pub fn supernode_distances(&self) -> &DistanceMatrix {
        &self.distances
    }

    /// `d_C(u, v)` for original vertices.
    pub fn distance(&self, u: usize, v: usize) -> &Distance {
        self.distances.get(self.partition[u], self.partition[v])
    }
}

pub fn contract(g: &Graph, c: &ContractionSet) -> Result<QuotientGraph, ContractionError> {
    c.validate(g)?;
    let n = g.vertex_count();
    let in_c = c.membership(g.edge_count());

    let mut partition = vec![usize::MAX; n];
    let mut count = 0;
    let mut stack = Vec::new();
    for start in 0..n {
        if partition[start] != usize::MAX {
            continue;
        }
        partition[start] = count;
        stack.push(start);
        while let Some(x) = stack.pop() {
            for &(y, id) in g.neighbors(x) {
                if in_c[id] && partition[y] == usize::MAX {
                    partition[y] = count;
                    stack.push(y);
                }
            }
        }
        count += 1;
    }

    let mut lightest: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    for (id, e) in g.edges().iter().enumerate() {
        let (a, b) = (partition[e.u], partition[e.v]);
        if in_c[id] || a == b {
            continue;
        }
        lightest
            .entry((a.min(b), a.max(b)))
            .and_modify(|w| {
                if e.weight < *w {
                    *w = e.weight.clone();
                }
            })
            .or_insert_with(|| e.weight.clone());
    }
    let supernodes = Graph::new(count, lightest.into_iter().map(|((a, b), w)| (a, b, w)))
        .expect("quotient of a simple graph is simple");
    let distances = shortest_distances(&supernodes);
    Ok(QuotientGraph { partition, supernodes, distances })
}

pub fn contracted_distance(g: &Graph, c: &ContractionSet, u: usize, v: usize) -> Result<Distance, ContractionError> {
    for x in [u, v] {
        if x >= g.vertex_count() {
            return Err(ContractionError::InvalidVertex { vertex: x, count: g.vertex_count() });
        }
    }
    Ok(contract(g, c)?.distance(u, v).clone())
}

/// Why a set fails its validity test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    /// Weak mode only: `C` is all of `E`.
    NotProperSubset,
    /// The pair `(u, v)`, `u < v`, whose contracted distance is too small.
    Distance {
        u: usize,
        v: usize,
        #[serde(serialize_with = "ser_display")]
        original: Rational,
        #[serde(serialize_with = "ser_display")]
        contracted: Rational,
    },
}

pub(crate) fn ser_display<T: fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotProperSubset => f.write_str("not-proper-subset: C contains every edge"),
            Violation::Distance { u, v, original, contracted } => {
                write!(f, "pair ({u}, {v}): d = {original}, d_C = {contracted}")
            }
        }
    }
}

/// Lexicographically smallest violation, or `None` when `c` is valid.
pub fn violation_witness(
    g: &Graph,
    c: &ContractionSet,
    t: &Tolerance,
    mode: Mode,
) -> Result<Option<Violation>, ContractionError> {
    c.validate(g)?;
    let checker = ContractionChecker::new(g, t)?;
    Ok(checker.violation(c, mode))
}

pub fn is_contraction(g: &Graph, c: &ContractionSet, t: &Tolerance) -> Result<bool, ContractionError> {
    Ok(violation_witness(g, c, t, Mode::Strong)?.is_none())
}

pub fn is_weak_contraction(g: &Graph, c: &ContractionSet, t: &Tolerance) -> Result<bool, ContractionError> {
    Ok(violation_witness(g, c, t, Mode::Weak)?.is_none())
}

/// Re-derives `d_C` as the distance with contracted edges at length zero.
/// Used to cross-check the quotient construction.
pub fn zero_length_distances(g: &Graph, c: &ContractionSet) -> Result<DistanceMatrix, ContractionError> {
    c.validate(g)?;
    let in_c = c.membership(g.edge_count());
    let mut table = Vec::new();
    crate::graph::scaled_distances_into(g, |id| in_c[id], &mut table);
    Ok(DistanceMatrix::from_scaled(g.vertex_count(), &table, g))
}
