use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{SolveError, SolveResult, SolverConfig, Witness};
use crate::graph::BipartiteGraph;

/// A complete bipartite subgraph, as sorted vertex lists of each side.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Biclique {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Biclique {
    pub fn new(left: impl IntoIterator<Item = usize>, right: impl IntoIterator<Item = usize>) -> Self {
        let mut left: Vec<usize> = left.into_iter().collect();
        let mut right: Vec<usize> = right.into_iter().collect();
        left.sort_unstable();
        left.dedup();
        right.sort_unstable();
        right.dedup();
        Biclique { left, right }
    }

    pub fn empty() -> Self {
        Biclique::default()
    }

    pub fn edge_count(&self) -> usize {
        self.left.len() * self.right.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_count() == 0
    }

    /// Every left-right pair is an edge of `g`.
    pub fn is_complete_in(&self, g: &BipartiteGraph) -> bool {
        self.left.iter().all(|&l| self.right.iter().all(|&r| g.has_edge(l, r)))
    }

    pub fn transposed(&self) -> Self {
        Biclique { left: self.right.clone(), right: self.left.clone() }
    }
}

/// Fixed-width bit set over the side opposite to the one being enumerated.
#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn full(n: usize) -> Self {
        let mut words = vec![u64::MAX; n.div_ceil(64)];
        if !n.is_multiple_of(64) {
            *words.last_mut().unwrap() = (1u64 << (n % 64)) - 1;
        }
        Bits(words)
    }

    fn from_indices(n: usize, idx: &[usize]) -> Self {
        let mut words = vec![0u64; n.div_ceil(64)];
        for &i in idx {
            words[i / 64] |= 1 << (i % 64);
        }
        Bits(words)
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn indices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.0.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push(wi * 64 + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }
}

/// Enumeration side: the smaller one, left on ties. Returns neighbourhood
/// bit sets of the enumerated side and whether the sides were swapped.
fn enumeration_side(b: &BipartiteGraph, config: &SolverConfig) -> Result<(Vec<Bits>, usize, bool), SolveError> {
    let swapped = b.right_count() < b.left_count();
    let (k, other) = if swapped { (b.right_count(), b.left_count()) } else { (b.left_count(), b.right_count()) };
    if k > config.side_cap {
        return Err(SolveError::SideCapExceeded { found: k, cap: config.side_cap });
    }
    let adj = (0..k)
        .map(|v| {
            let nbrs = if swapped { b.right_neighbors(v) } else { b.left_neighbors(v) };
            Bits::from_indices(other, nbrs)
        })
        .collect();
    Ok((adj, other, swapped))
}

fn orient(side: Vec<usize>, other: Vec<usize>, swapped: bool) -> Biclique {
    if swapped {
        Biclique::new(other, side)
    } else {
        Biclique::new(side, other)
    }
}

struct Search {
    adj: Vec<Bits>,
    best_value: usize,
    best: Option<(Vec<usize>, Bits)>,
    explored: u64,
}

/// Maximum edge biclique.
///
/// Walks subsets `S` of the smaller side in lexicographic order, carrying the
/// common neighbourhood `N(S)`; the candidate is `S x N(S)`. A subtree is cut
/// when `(|S| + remaining) * |N(S)|` cannot beat the incumbent, which is
/// sound because `N` only shrinks as `S` grows.
pub fn max_edge_biclique_exact(b: &BipartiteGraph, config: &SolverConfig) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    let (adj, other, swapped) = enumeration_side(b, config)?;
    let mut search = Search { adj, best_value: 0, best: None, explored: 1 };
    let mut chosen = Vec::new();
    meb_descend(&mut search, &mut chosen, &Bits::full(other), 0);
    let witness = match search.best {
        Some((s, t)) => orient(s, t.indices(), swapped),
        None => Biclique::empty(),
    };
    Ok(SolveResult {
        objective: search.best_value as u64,
        witness: Witness::Biclique(witness),
        explored: search.explored,
        elapsed: start.elapsed(),
    })
}

fn meb_descend(search: &mut Search, chosen: &mut Vec<usize>, common: &Bits, next: usize) {
    let k = search.adj.len();
    for i in next..k {
        let narrowed = common.and(&search.adj[i]);
        let width = narrowed.count();
        let depth_bound = chosen.len() + 1 + (k - 1 - i);
        if depth_bound * width <= search.best_value {
            continue;
        }
        search.explored += 1;
        chosen.push(i);
        let value = chosen.len() * width;
        if value > search.best_value {
            search.best_value = value;
            search.best = Some((chosen.clone(), narrowed.clone()));
        }
        meb_descend(search, chosen, &narrowed, i + 1);
        chosen.pop();
    }
}

/// Maximum balanced biclique: the largest `t` with `K_{t,t}` present.
///
/// Same walk as [`max_edge_biclique_exact`], keeping sets with
/// `|S| <= |N(S)|`; the witness pairs `S` with the first `|S|` vertices of
/// `N(S)`.
pub fn max_balanced_biclique_exact(b: &BipartiteGraph, config: &SolverConfig) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    let (adj, other, swapped) = enumeration_side(b, config)?;
    let mut search = Search { adj, best_value: 0, best: None, explored: 1 };
    let mut chosen = Vec::new();
    mbb_descend(&mut search, &mut chosen, &Bits::full(other), 0);
    let witness = match search.best {
        Some((s, t)) => {
            let mut t = t.indices();
            t.truncate(s.len());
            orient(s, t, swapped)
        }
        None => Biclique::empty(),
    };
    Ok(SolveResult {
        objective: search.best_value as u64,
        witness: Witness::Biclique(witness),
        explored: search.explored,
        elapsed: start.elapsed(),
    })
}

fn mbb_descend(search: &mut Search, chosen: &mut Vec<usize>, common: &Bits, next: usize) {
    let k = search.adj.len();
    for i in next..k {
        let narrowed = common.and(&search.adj[i]);
        let width = narrowed.count();
        let depth_bound = chosen.len() + 1 + (k - 1 - i);
        if depth_bound.min(width) <= search.best_value {
            continue;
        }
        search.explored += 1;
        chosen.push(i);
        if chosen.len() <= width && chosen.len() > search.best_value {
            search.best_value = chosen.len();
            search.best = Some((chosen.clone(), narrowed.clone()));
        }
        mbb_descend(search, chosen, &narrowed, i + 1);
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_planted_biclique, Rational};

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    fn meb(b: &BipartiteGraph) -> (u64, Biclique) {
        let res = max_edge_biclique_exact(b, &cfg()).unwrap();
        (res.objective, res.witness.biclique().unwrap().clone())
    }

    fn mbb(b: &BipartiteGraph) -> (u64, Biclique) {
        let res = max_balanced_biclique_exact(b, &cfg()).unwrap();
        (res.objective, res.witness.biclique().unwrap().clone())
    }

    #[test]
    fn complete_two_by_two() {
        let (v, w) = meb(&BipartiteGraph::complete(2, 2));
        assert_eq!(v, 4);
        assert_eq!(w, Biclique::new([0, 1], [0, 1]));
    }

    #[test]
    fn empty_graph() {
        let (v, w) = meb(&BipartiteGraph::unit(3, 2, []).unwrap());
        assert_eq!(v, 0);
        assert_eq!(w, Biclique::empty());
        assert_eq!(mbb(&BipartiteGraph::unit(3, 2, []).unwrap()).0, 0);
    }

    #[test]
    fn planted_three_by_three() {
        let zero = Rational::from_integer(0.into());
        let (g, plant) = generate_planted_biclique(5, 5, 3, 3, &zero, 11).unwrap();
        let (v, w) = meb(&g);
        assert_eq!(v, 9);
        assert_eq!(w, plant);
    }

    #[test]
    fn balanced_examples() {
        assert_eq!(mbb(&BipartiteGraph::complete(2, 3)).0, 2);
        let (t, w) = mbb(&BipartiteGraph::complete(3, 2));
        assert_eq!(t, 2);
        assert_eq!(w, Biclique::new([0, 1], [0, 1]));
        assert_eq!(mbb(&BipartiteGraph::complete(1, 1)).0, 1);
    }

    #[test]
    fn right_side_enumeration_reports_left_right_correctly() {
        // star: left 0..3 all adjacent to right 0
        let star = BipartiteGraph::unit(3, 1, [(0, 0), (1, 0), (2, 0)]).unwrap();
        let (v, w) = meb(&star);
        assert_eq!(v, 3);
        assert_eq!(w, Biclique::new([0, 1, 2], [0]));
        assert!(w.is_complete_in(&star));
    }

    #[test]
    fn lexicographic_tie_break() {
        // two disjoint K_{1,2}; the one on left vertex 0 wins
        let g = BipartiteGraph::unit(2, 4, [(0, 2), (0, 3), (1, 0), (1, 1)]).unwrap();
        assert_eq!(meb(&g), (2, Biclique::new([0], [2, 3])));
    }

    #[test]
    fn side_cap() {
        let cap = SolverConfig { side_cap: 2, ..cfg() };
        assert_eq!(
            max_edge_biclique_exact(&BipartiteGraph::complete(3, 4), &cap).unwrap_err(),
            SolveError::SideCapExceeded { found: 3, cap: 2 }
        );
        assert!(max_balanced_biclique_exact(&BipartiteGraph::complete(4, 3), &cap).is_err());
    }

    #[test]
    fn wide_other_side() {
        let g = BipartiteGraph::complete(2, 130);
        assert_eq!(meb(&g).0, 260);
        assert_eq!(mbb(&g).0, 2);
    }
}
