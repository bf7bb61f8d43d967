use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::{Graph, Rational};

/// Sentinel for "no path" in the scaled integer tables.
pub(crate) const INF: u64 = u64::MAX;

/// A shortest-path length, or no path at all.
///
/// `Unreachable` orders above every finite value and absorbs addition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Distance {
    Finite(Rational),
    Unreachable,
}

impl Distance {
    pub fn zero() -> Self {
        Distance::Finite(Rational::zero())
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Distance::Finite(r) => Some(r),
            Distance::Unreachable => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Distance::Finite(r) if r.is_zero())
    }

    pub fn saturating_add(&self, other: &Distance) -> Distance {
        match (self, other) {
            (Distance::Finite(a), Distance::Finite(b)) => Distance::Finite(a + b),
            _ => Distance::Unreachable,
        }
    }
}

impl PartialOrd for Distance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Distance {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Distance::Finite(a), Distance::Finite(b)) => a.cmp(b),
            (Distance::Finite(_), Distance::Unreachable) => Ordering::Less,
            (Distance::Unreachable, Distance::Finite(_)) => Ordering::Greater,
            (Distance::Unreachable, Distance::Unreachable) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(r) => write!(f, "{r}"),
            Distance::Unreachable => f.write_str("inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Symmetric all-pairs distance table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<Distance>,
}

impl DistanceMatrix {
    pub(crate) fn from_scaled(n: usize, table: &[u64], g: &Graph) -> Self {
        let entries = table
            .iter()
            .map(|&d| if d == INF { Distance::Unreachable } else { Distance::Finite(g.unscale(d)) })
            .collect();
        DistanceMatrix { n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> &Distance {
        &self.entries[u * self.n + v]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Distance]> {
        self.entries.chunks(self.n.max(1)).take(self.n)
    }
}

/// Floyd-Warshall over a row-major `n x n` table of scaled integer lengths.
pub(crate) fn floyd_in_place(n: usize, d: &mut [u64]) {
    for k in 0..n {
        for i in 0..n {
            let dik = d[i * n + k];
            if dik == INF {
                continue;
            }
            for j in 0..n {
                let dkj = d[k * n + j];
                if dkj == INF {
                    continue;
                }
                let via = dik + dkj;
                if via < d[i * n + j] {
                    d[i * n + j] = via;
                }
            }
        }
    }
}

/// Scaled integer distance table of `g` where edges flagged in `zeroed` cost
/// nothing. Fills `out` (resized to `n * n`).
pub(crate) fn scaled_distances_into(g: &Graph, zeroed: impl Fn(usize) -> bool, out: &mut Vec<u64>) {
    let n = g.vertex_count();
    out.clear();
    out.resize(n * n, INF);
    for v in 0..n {
        out[v * n + v] = 0;
    }
    for (id, (e, &w)) in g.edges().iter().zip(g.scaled_weights()).enumerate() {
        let w = if zeroed(id) { 0 } else { w };
        out[e.u * n + e.v] = w;
        out[e.v * n + e.u] = w;
    }
    floyd_in_place(n, out);
}

/// Exact all-pairs shortest-path distances.
pub fn shortest_distances(g: &Graph) -> DistanceMatrix {
    let mut table = Vec::new();
    scaled_distances_into(g, |_| false, &mut table);
    DistanceMatrix::from_scaled(g.vertex_count(), &table, g)
}
