//! Path enumeration for the path-lemma check.

use crate::graph::Graph;

/// A simple path as its vertex sequence and the edge ids along it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PathSet {
    pub paths: Vec<Path>,
    /// Some path could have been extended beyond the length cap.
    pub truncated: bool,
}

/// Every simple path with at least `min_edges` and at most `max_edges`
/// edges, each undirected path once (first vertex below last).
///
/// Order: start vertex ascending, then depth-first with neighbours ascending.
pub fn simple_paths(g: &Graph, min_edges: usize, max_edges: usize) -> PathSet {
    let mut out = PathSet::default();
    let mut on_path = vec![false; g.vertex_count()];
    for s in 0..g.vertex_count() {
        let mut path = Path { vertices: vec![s], edges: Vec::new() };
        on_path[s] = true;
        extend(g, &mut path, &mut on_path, min_edges, max_edges, &mut out, &|_, _| true);
        on_path[s] = false;
    }
    out
}

/// Every shortest path with at least `min_edges` edges between every pair,
/// each undirected path once. Requires unit weights (hop counts).
pub fn shortest_paths(g: &Graph, min_edges: usize) -> PathSet {
    let mut out = PathSet::default();
    let mut on_path = vec![false; g.vertex_count()];
    for s in 0..g.vertex_count() {
        let level = g.bfs_levels(s);
        // a walk that climbs one BFS level per step is a shortest path
        let step = |from: usize, to: usize| level[to] == level[from] + 1;
        let mut path = Path { vertices: vec![s], edges: Vec::new() };
        on_path[s] = true;
        extend(g, &mut path, &mut on_path, min_edges, usize::MAX, &mut out, &step);
        on_path[s] = false;
    }
    out
}

fn extend(
    g: &Graph,
    path: &mut Path,
    on_path: &mut [bool],
    min_edges: usize,
    max_edges: usize,
    out: &mut PathSet,
    step: &dyn Fn(usize, usize) -> bool,
) {
    let last = *path.vertices.last().unwrap();
    let first = path.vertices[0];
    if path.edges.len() >= min_edges && !path.edges.is_empty() && first < last {
        out.paths.push(path.clone());
    }
    for &(w, id) in g.neighbors(last) {
        if on_path[w] || !step(last, w) {
            continue;
        }
        if path.edges.len() == max_edges {
            out.truncated = true;
            return;
        }
        on_path[w] = true;
        path.vertices.push(w);
        path.edges.push(id);
        extend(g, path, on_path, min_edges, max_edges, out, step);
        path.edges.pop();
        path.vertices.pop();
        on_path[w] = false;
    }
}
