//! Weighted undirected graphs with exact rational edge lengths.
//!
//! Every edge weight is a strictly positive [`Rational`]. On construction the
//! graph also caches an integer image of its weights, scaled by the least
//! common multiple of the denominators, which is what the shortest-path and
//! verifier inner loops run on. Distances are converted back to rationals at
//! the API boundary, so no floating point is involved anywhere.

mod distance;
mod generate;
mod io;

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use thiserror::Error;

pub use distance::{shortest_distances, Distance, DistanceMatrix};
pub use generate::{generate_planted_biclique, generate_random_bipartite, GenerateError};
pub use io::{parse_graph, render_bipartite, render_graph, ParseError, ParsedGraph};

pub(crate) use distance::{scaled_distances_into, INF};

/// Exact rational number used for weights, distances and tolerances.
pub type Rational = num_rational::BigRational;

/// Parses `p/q` or an integer into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() || text.contains(char::is_whitespace) {
        return None;
    }
    text.parse::<Rational>().ok()
}

pub fn rational_from_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("non-positive weight {weight} on edge ({u}, {v})")]
    NonPositiveWeight { u: usize, v: usize, weight: Rational },
    #[error("edge weights too large or too fine-grained to scale into 64-bit integers")]
    WeightRange,
}

/// One undirected edge, stored with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: Rational,
}

impl Edge {
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// A simple undirected graph on vertices `0..n`.
///
/// Edges are kept sorted by `(min endpoint, max endpoint)`; an edge id is its
/// position in that order.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(usize, usize)>>,
    scale: BigInt,
    scaled: Vec<u64>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut list = Vec::new();
        for (a, b, weight) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, count: n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if !weight.is_positive() {
                return Err(GraphError::NonPositiveWeight { u: a, v: b, weight });
            }
            list.push(Edge { u: a.min(b), v: a.max(b), weight });
        }
        list.sort_by_key(|e| (e.u, e.v));
        for pair in list.windows(2) {
            if (pair[0].u, pair[0].v) == (pair[1].u, pair[1].v) {
                return Err(GraphError::DuplicateEdge(pair[0].u, pair[0].v));
            }
        }

        let mut scale = BigInt::one();
        for e in &list {
            scale = scale.lcm(e.weight.denom());
        }
        let mut scaled = Vec::with_capacity(list.len());
        let mut total: u64 = 0;
        for e in &list {
            let w = (e.weight.numer() * (&scale / e.weight.denom())).to_u64().ok_or(GraphError::WeightRange)?;
            total = total.checked_add(w).ok_or(GraphError::WeightRange)?;
            scaled.push(w);
        }
        if total == INF {
            return Err(GraphError::WeightRange);
        }

        let mut adjacency = vec![Vec::new(); n];
        for (id, e) in list.iter().enumerate() {
            adjacency[e.u].push((e.v, id));
            adjacency[e.v].push((e.u, id));
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Ok(Graph { n, edges: list, adjacency, scale, scaled })
    }

    /// Unit-weight graph from endpoint pairs.
    pub fn unit<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Graph::new(n, edges.into_iter().map(|(u, v)| (u, v, Rational::one())))
    }

    pub fn path(n: usize) -> Self {
        Graph::unit(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least 3 vertices");
        Graph::unit(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &Edge {
        &self.edges[id]
    }

    /// `(neighbour, edge id)` pairs, sorted by neighbour.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        let nbrs = &self.adjacency[a];
        nbrs.binary_search_by_key(&b, |&(x, _)| x).ok().map(|i| nbrs[i].1)
    }

    pub fn is_unit_weight(&self) -> bool {
        self.edges.iter().all(|e| e.weight.is_one())
    }

    /// Common denominator of all weights; `scaled_weights()[i] / scale()` is
    /// the weight of edge `i`.
    pub(crate) fn scale(&self) -> &BigInt {
        &self.scale
    }

    pub(crate) fn scaled_weights(&self) -> &[u64] {
        &self.scaled
    }

    pub(crate) fn unscale(&self, value: u64) -> Rational {
        Rational::new(BigInt::from(value), self.scale.clone())
    }

    /// Same graph with every weight multiplied by `factor`.
    pub fn scaled_by(&self, factor: &Rational) -> Result<Graph, GraphError> {
        Graph::new(self.n, self.edges.iter().map(|e| (e.u, e.v, &e.weight * factor)))
    }

    /// Same graph with every weight replaced by `weight`.
    pub fn with_uniform_weight(&self, weight: &Rational) -> Result<Graph, GraphError> {
        Graph::new(self.n, self.edges.iter().map(|e| (e.u, e.v, weight.clone())))
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        assert_eq!(perm.len(), self.n);
        Graph::new(self.n, self.edges.iter().map(|e| (perm[e.u], perm[e.v], e.weight.clone())))
    }

    /// Component index of every vertex, numbered by smallest member.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            queue.push_back(start);
            while let Some(x) = queue.pop_front() {
                for &(y, _) in &self.adjacency[x] {
                    if label[y] == usize::MAX {
                        label[y] = count;
                        queue.push_back(y);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Splits into connected components. Each entry holds the induced
    /// subgraph and the original vertex id of each of its vertices.
    pub fn components(&self) -> Vec<(Graph, Vec<usize>)> {
        let (label, count) = self.component_labels();
        let mut members = vec![Vec::new(); count];
        let mut local = vec![0; self.n];
        for v in 0..self.n {
            local[v] = members[label[v]].len();
            members[label[v]].push(v);
        }
        let mut edges = vec![Vec::new(); count];
        for e in &self.edges {
            edges[label[e.u]].push((local[e.u], local[e.v], e.weight.clone()));
        }
        members
            .into_iter()
            .zip(edges)
            .map(|(vs, es)| (Graph::new(vs.len(), es).expect("subgraph of a simple graph"), vs))
            .collect()
    }

    /// Shortest-path hop counts from `source`; `usize::MAX` when unreachable.
    pub fn bfs_levels(&self, source: usize) -> Vec<usize> {
        let mut level = vec![usize::MAX; self.n];
        level[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            for &(y, _) in &self.adjacency[x] {
                if level[y] == usize::MAX {
                    level[y] = level[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        level
    }

    /// Two-colouring with every component's smallest vertex on side 0, or
    /// `None` for a non-bipartite graph.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n];
        for start in 0..self.n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &(y, _) in &self.adjacency[x] {
                    if color[y] == u8::MAX {
                        color[y] = 1 - color[x];
                        queue.push_back(y);
                    } else if color[y] == color[x] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }
}

/// True iff the graph has at most one connected component.
pub fn is_connected(g: &Graph) -> bool {
    g.component_labels().1 <= 1
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpansionError {
    #[error("regularity required: vertex degrees differ")]
    NotRegular,
    #[error("regularity required: graph has degree 0")]
    ZeroDegree,
    #[error("invalid subset: must be a nonempty proper subset of the vertices")]
    InvalidSubset,
}

/// Edge expansion `|E(S, V \ S)| / (d |S|)` of a vertex set in a d-regular graph.
pub fn edge_expansion(g: &Graph, subset: &[usize]) -> Result<Rational, ExpansionError> {
    let n = g.vertex_count();
    let mut inside = vec![false; n];
    for &v in subset {
        if v >= n {
            return Err(ExpansionError::InvalidSubset);
        }
        inside[v] = true;
    }
    let size = inside.iter().filter(|&&b| b).count();
    if size == 0 || size == n {
        return Err(ExpansionError::InvalidSubset);
    }
    let degree = g.degree(0);
    if (1..n).any(|v| g.degree(v) != degree) {
        return Err(ExpansionError::NotRegular);
    }
    if degree == 0 {
        return Err(ExpansionError::ZeroDegree);
    }
    let crossing = g.edges().iter().filter(|e| inside[e.u] != inside[e.v]).count();
    Ok(Rational::new(BigInt::from(crossing), BigInt::from(degree * size)))
}

/// A bipartite graph with independently indexed sides.
///
/// The [`Graph`] view places left vertex `l` at `l` and right vertex `r` at
/// `left_count + r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    edges: Vec<(usize, usize, Rational)>,
    graph: Graph,
    left_adj: Vec<Vec<usize>>,
    right_adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new<I>(left: usize, right: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut list: Vec<(usize, usize, Rational)> = Vec::new();
        for (l, r, w) in edges {
            if l >= left {
                return Err(GraphError::VertexOutOfRange { vertex: l, count: left });
            }
            if r >= right {
                return Err(GraphError::VertexOutOfRange { vertex: r, count: right });
            }
            list.push((l, r, w));
        }
        let graph = Graph::new(left + right, list.iter().map(|(l, r, w)| (*l, left + r, w.clone())))?;
        list.sort_by_key(|&(l, r, _)| (l, r));
        let mut left_adj = vec![Vec::new(); left];
        let mut right_adj = vec![Vec::new(); right];
        for (l, r, _) in &list {
            left_adj[*l].push(*r);
            right_adj[*r].push(*l);
        }
        for adj in right_adj.iter_mut() {
            adj.sort_unstable();
        }
        Ok(BipartiteGraph { left, right, edges: list, graph, left_adj, right_adj })
    }

    pub fn unit<I>(left: usize, right: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        BipartiteGraph::new(left, right, edges.into_iter().map(|(l, r)| (l, r, Rational::one())))
    }

    pub fn complete(left: usize, right: usize) -> Self {
        BipartiteGraph::unit(left, right, (0..left).flat_map(|l| (0..right).map(move |r| (l, r))))
            .expect("complete bipartite graph is simple")
    }

    /// Bipartite view of a two-colourable graph: colour 0 goes left, colour 1
    /// right, each side in increasing vertex order. Also returns the original
    /// vertex for every view vertex (left first).
    pub fn from_graph(g: &Graph) -> Option<(BipartiteGraph, Vec<usize>)> {
        let color = g.two_coloring()?;
        let mut index = vec![0; g.vertex_count()];
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for v in 0..g.vertex_count() {
            if color[v] == 0 {
                index[v] = left.len();
                left.push(v);
            } else {
                index[v] = right.len();
                right.push(v);
            }
        }
        let edges = g.edges().iter().map(|e| {
            let (l, r) = if color[e.u] == 0 { (e.u, e.v) } else { (e.v, e.u) };
            (index[l], index[r], e.weight.clone())
        });
        let b = BipartiteGraph::new(left.len(), right.len(), edges).ok()?;
        let mut origin = left;
        origin.extend(right);
        Some((b, origin))
    }

    pub fn left_count(&self) -> usize {
        self.left
    }

    pub fn right_count(&self) -> usize {
        self.right
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `(left, right, weight)` sorted by `(left, right)`.
    pub fn edges(&self) -> &[(usize, usize, Rational)] {
        &self.edges
    }

    pub fn left_neighbors(&self, l: usize) -> &[usize] {
        &self.left_adj[l]
    }

    pub fn right_neighbors(&self, r: usize) -> &[usize] {
        &self.right_adj[r]
    }

    pub fn has_edge(&self, l: usize, r: usize) -> bool {
        l < self.left && r < self.right && self.left_adj[l].binary_search(&r).is_ok()
    }

    pub fn as_graph(&self) -> &Graph {
        &self.graph
    }

    pub fn is_connected(&self) -> bool {
        is_connected(&self.graph)
    }

    pub fn relabel(&self, left_perm: &[usize], right_perm: &[usize]) -> Result<Self, GraphError> {
        BipartiteGraph::new(
            self.left,
            self.right,
            self.edges.iter().map(|(l, r, w)| (left_perm[*l], right_perm[*r], w.clone())),
        )
    }

    /// Sides exchanged.
    pub fn transposed(&self) -> Self {
        BipartiteGraph::new(self.right, self.left, self.edges.iter().map(|(l, r, w)| (*r, *l, w.clone())))
            .expect("transpose of a valid bipartite graph")
    }
}
