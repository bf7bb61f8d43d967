use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::{ContractionError, ContractionSet, Mode, Tolerance, Violation};
use crate::graph::{is_connected, scaled_distances_into, Graph, Rational};

/// Precomputed validity test for one graph and tolerance.
///
/// Everything runs on the graph's scaled integer weights. For each pair the
/// rational lower bound `d / alpha - beta` is turned into the least admissible
/// scaled contracted distance (a ceiling), so a check is a Floyd-Warshall pass
/// with contracted edges at length zero followed by integer comparisons.
#[derive(Debug, Clone)]
pub struct ContractionChecker<'g> {
    graph: &'g Graph,
    base: Vec<u64>,
    /// `(u, v, need)` for `u < v` in lexicographic order, only where `need > 0`
    /// (any other pair is satisfied by every `d_C >= 0`).
    constrained: Vec<(usize, usize, i128)>,
}

impl<'g> ContractionChecker<'g> {
    pub fn new(graph: &'g Graph, tolerance: &Tolerance) -> Result<Self, ContractionError> {
        if !is_connected(graph) {
            return Err(ContractionError::Disconnected);
        }
        let n = graph.vertex_count();
        let mut base = Vec::new();
        scaled_distances_into(graph, |_| false, &mut base);

        let scaled_beta = tolerance.beta() * Rational::from_integer(graph.scale().clone());
        let mut constrained = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let d = Rational::from_integer(BigInt::from(base[u * n + v]));
                let need = (d / tolerance.alpha() - &scaled_beta).ceil().to_integer();
                if need.is_positive() {
                    constrained.push((u, v, need.to_i128().unwrap_or(i128::MAX)));
                }
            }
        }
        Ok(ContractionChecker { graph, base, constrained })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    /// First pair `(u, v)` violating the distance condition, given edge
    /// membership of `C`. Ignores the proper-subset rule. `scratch` is reused
    /// between calls to avoid reallocating the distance table.
    pub fn first_violating_pair(
        &self,
        contracted: impl Fn(usize) -> bool,
        mode: Mode,
        scratch: &mut Vec<u64>,
    ) -> Option<(usize, usize)> {
        let n = self.graph.vertex_count();
        scaled_distances_into(self.graph, contracted, scratch);
        self.constrained.iter().find_map(|&(u, v, need)| {
            let dc = scratch[u * n + v];
            let exempt = mode == Mode::Weak && dc == 0;
            (!exempt && (dc as i128) < need).then_some((u, v))
        })
    }

    /// Full validity test for a set given as a bit mask over edge ids.
    pub fn is_valid_mask(&self, mask: u64, mode: Mode, scratch: &mut Vec<u64>) -> bool {
        let m = self.graph.edge_count();
        debug_assert!(m <= 64);
        if mode == Mode::Weak && mask.count_ones() as usize == m {
            return false;
        }
        self.first_violating_pair(|id| mask >> id & 1 == 1, mode, scratch).is_none()
    }

    pub fn is_valid(&self, c: &ContractionSet, mode: Mode) -> bool {
        self.violation(c, mode).is_none()
    }

    /// Lexicographically smallest violation of an already validated set.
    pub fn violation(&self, c: &ContractionSet, mode: Mode) -> Option<Violation> {
        let m = self.graph.edge_count();
        if mode == Mode::Weak && c.len() == m {
            return Some(Violation::NotProperSubset);
        }
        let in_c = c.membership(m);
        let mut scratch = Vec::new();
        let (u, v) = self.first_violating_pair(|id| in_c[id], mode, &mut scratch)?;
        let n = self.graph.vertex_count();
        Some(Violation::Distance {
            u,
            v,
            original: self.graph.unscale(self.base[u * n + v]),
            contracted: self.graph.unscale(scratch[u * n + v]),
        })
    }
}
