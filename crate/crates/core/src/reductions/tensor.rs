use num_traits::One;

use super::ReductionError;
use crate::graph::{BipartiteGraph, Rational};
use crate::solvers::Biclique;

/// Bipartite part of the tensor square of `G = (L, R)`.
///
/// Left vertices are pairs `(l, r)` in `L x R` (index `l * |R| + r`), right
/// vertices are pairs `(r, l)` in `R x L` (index `r * |L| + l`). The pair
/// `((a, b), (c, d))` is an edge iff `a ~ c` and `d ~ b` in `G`. Edges have
/// unit weight.
#[derive(Debug, Clone)]
pub struct TensorGraph {
    factor: BipartiteGraph,
    graph: BipartiteGraph,
}

impl TensorGraph {
    pub fn factor(&self) -> &BipartiteGraph {
        &self.factor
    }

    pub fn graph(&self) -> &BipartiteGraph {
        &self.graph
    }

    /// Size of each part, `|L| * |R|`.
    pub fn part_size(&self) -> usize {
        self.factor.left_count() * self.factor.right_count()
    }

    /// Factor coordinates `(l, r)` of a left tensor vertex.
    pub fn left_pair(&self, i: usize) -> (usize, usize) {
        let r = self.factor.right_count();
        (i / r, i % r)
    }

    /// Factor coordinates `(r, l)` of a right tensor vertex.
    pub fn right_pair(&self, j: usize) -> (usize, usize) {
        let l = self.factor.left_count();
        (j / l, j % l)
    }

    pub fn left_index(&self, l: usize, r: usize) -> usize {
        l * self.factor.right_count() + r
    }

    pub fn right_index(&self, r: usize, l: usize) -> usize {
        r * self.factor.left_count() + l
    }
}

pub fn build_tensor_square(g: &BipartiteGraph) -> TensorGraph {
    let (nl, nr) = (g.left_count(), g.right_count());
    let mut edges = Vec::with_capacity(g.edge_count() * g.edge_count());
    // (a, b) ~ (c, d) iff a ~ c and d ~ b
    for (a, c, _) in g.edges() {
        for (d, b, _) in g.edges() {
            edges.push((a * nr + b, c * nl + d, Rational::one()));
        }
    }
    let graph = BipartiteGraph::new(nl * nr, nr * nl, edges).expect("tensor edges are distinct");
    TensorGraph { factor: g.clone(), graph }
}

/// Lifts a biclique `S x T` of the factor to the `|S||T| x |S||T|` biclique
/// `{(l, r)} x {(r, l)}` (`l` in `S`, `r` in `T`) of the tensor square.
pub fn lift_biclique(t: &TensorGraph, b: &Biclique) -> Result<Biclique, ReductionError> {
    let f = t.factor();
    let in_range = b.left.iter().all(|&l| l < f.left_count()) && b.right.iter().all(|&r| r < f.right_count());
    if !in_range || !b.is_complete_in(f) {
        return Err(ReductionError::InvalidBiclique);
    }
    let left = b.left.iter().flat_map(|&l| b.right.iter().map(move |&r| (l, r)));
    let right = b.right.iter().flat_map(|&r| b.left.iter().map(move |&l| (r, l)));
    let lifted = Biclique::new(left.map(|(l, r)| t.left_index(l, r)), right.map(|(r, l)| t.right_index(r, l)));
    if !lifted.is_complete_in(t.graph()) {
        return Err(ReductionError::InvalidBiclique);
    }
    Ok(lifted)
}

/// Projects a tensor biclique onto the factor.
///
/// Two factor bicliques are induced: first coordinates of the left side
/// against first coordinates of the right side, and second coordinates of
/// the right side against second coordinates of the left side. The larger
/// one (by edge count, the first on ties) is returned. Coinciding coordinates
/// mean this can have fewer than `|left| * |right|` edges.
pub fn project_biclique(t: &TensorGraph, b: &Biclique) -> Result<Biclique, ReductionError> {
    let in_range = b.left.iter().all(|&i| i < t.part_size()) && b.right.iter().all(|&j| j < t.part_size());
    if !in_range || !b.is_complete_in(t.graph()) {
        return Err(ReductionError::InvalidBiclique);
    }
    let left_pairs: Vec<(usize, usize)> = b.left.iter().map(|&i| t.left_pair(i)).collect();
    let right_pairs: Vec<(usize, usize)> = b.right.iter().map(|&j| t.right_pair(j)).collect();
    let first = Biclique::new(left_pairs.iter().map(|&(l, _)| l), right_pairs.iter().map(|&(r, _)| r));
    let second = Biclique::new(right_pairs.iter().map(|&(_, l)| l), left_pairs.iter().map(|&(_, r)| r));
    let best = if second.edge_count() > first.edge_count() { second } else { first };
    if !best.is_complete_in(t.factor()) {
        return Err(ReductionError::InvalidBiclique);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> BipartiteGraph {
        // v1 - u1 - v2
        BipartiteGraph::unit(2, 1, [(0, 0), (1, 0)]).unwrap()
    }

    #[test]
    fn single_edge_squares_to_single_edge() {
        let t = build_tensor_square(&BipartiteGraph::complete(1, 1));
        assert_eq!(t.part_size(), 1);
        assert_eq!(t.graph().edge_count(), 1);
        let b = Biclique::new([0], [0]);
        assert_eq!(lift_biclique(&t, &b).unwrap(), b);
        assert_eq!(project_biclique(&t, &b).unwrap(), b);
    }

    #[test]
    fn path_squares_to_k22() {
        let t = build_tensor_square(&path3());
        assert_eq!(t.graph(), &BipartiteGraph::complete(2, 2));
        assert_eq!(t.left_pair(1), (1, 0));
        assert_eq!(t.right_pair(1), (0, 1));
        let star = Biclique::new([0, 1], [0]);
        let lifted = lift_biclique(&t, &star).unwrap();
        assert_eq!(lifted, Biclique::new([0, 1], [0, 1]));
        assert_eq!(lifted.edge_count(), 4);
        let back = project_biclique(&t, &lifted).unwrap();
        assert_eq!(back, star);
        assert_eq!(back.edge_count(), 2);
    }

    #[test]
    fn empty_factor_gives_empty_tensor() {
        let t = build_tensor_square(&BipartiteGraph::unit(2, 2, []).unwrap());
        assert_eq!(t.part_size(), 4);
        assert_eq!(t.graph().edge_count(), 0);
    }

    #[test]
    fn planted_k23_lifts_to_k66() {
        let g = BipartiteGraph::complete(2, 3);
        let t = build_tensor_square(&g);
        let lifted = lift_biclique(&t, &Biclique::new([0, 1], [0, 1, 2])).unwrap();
        assert_eq!((lifted.left.len(), lifted.right.len()), (6, 6));
        assert_eq!(lifted.edge_count(), 36);
        assert!(lifted.is_complete_in(t.graph()));
    }

    #[test]
    fn edge_rule_matches_definition() {
        let g = BipartiteGraph::unit(2, 3, [(0, 0), (0, 2), (1, 1), (1, 2)]).unwrap();
        let t = build_tensor_square(&g);
        for i in 0..t.part_size() {
            for j in 0..t.part_size() {
                let (a, b) = t.left_pair(i);
                let (c, d) = t.right_pair(j);
                assert_eq!(t.graph().has_edge(i, j), g.has_edge(a, c) && g.has_edge(d, b));
            }
        }
        assert_eq!(t.graph().edge_count(), 16);
    }

    #[test]
    fn invalid_bicliques_are_refused() {
        let t = build_tensor_square(&path3());
        assert_eq!(lift_biclique(&t, &Biclique::new([0], [1])).unwrap_err(), ReductionError::InvalidBiclique);
        let g = BipartiteGraph::unit(2, 2, [(0, 0), (1, 1)]).unwrap();
        let t = build_tensor_square(&g);
        assert_eq!(project_biclique(&t, &Biclique::new([0, 1], [0])).unwrap_err(), ReductionError::InvalidBiclique);
    }
}
