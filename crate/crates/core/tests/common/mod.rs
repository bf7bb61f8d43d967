//! Independent reference implementations used as test oracles.
//!
//! Nothing here calls into the library's distance, contraction or search
//! code: distances come from Bellman-Ford over exact rationals on an
//! explicitly merged quotient, and optima from plain power-set filtering.

#![allow(dead_code)]

use std::collections::BTreeSet;

use contractlab::graph::{BipartiteGraph, Graph, Rational};
use contractlab::solvers::Biclique;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

/// All-pairs distances of the graph obtained by merging the endpoints of
/// every edge with `contracted[id]`, indexed by original vertices.
pub fn naive_distances(g: &Graph, contracted: &[bool]) -> Vec<Vec<Option<Rational>>> {
    let n = g.vertex_count();
    // merge classes by repeated relabeling until stable
    let mut class: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for (id, e) in g.edges().iter().enumerate() {
            if contracted[id] && class[e.u] != class[e.v] {
                let (keep, drop) = (class[e.u].min(class[e.v]), class[e.u].max(class[e.v]));
                for c in class.iter_mut() {
                    if *c == drop {
                        *c = keep;
                    }
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    // Bellman-Ford from every class over the surviving edges
    let mut out = vec![vec![None; n]; n];
    for s in 0..n {
        let mut dist: Vec<Option<Rational>> = vec![None; n];
        for v in 0..n {
            if class[v] == class[s] {
                dist[v] = Some(Rational::zero());
            }
        }
        for _ in 0..n {
            let mut changed = false;
            for (id, e) in g.edges().iter().enumerate() {
                if contracted[id] {
                    continue;
                }
                for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                    if let Some(da) = dist[a].clone() {
                        let cand = da + &e.weight;
                        // every member of b's class is reached at the same cost
                        for v in 0..n {
                            if class[v] == class[b] && dist[v].as_ref().is_none_or(|dv| cand < *dv) {
                                dist[v] = Some(cand.clone());
                                changed = true;
                            }
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        out[s] = dist;
    }
    out
}

/// `(strong, weak)` validity of `contracted` at tolerance `(alpha, beta)`,
/// straight from the definitions. Unreachable pairs stay unreachable and
/// impose nothing.
pub fn naive_validity(
    g: &Graph,
    base: &[Vec<Option<Rational>>],
    contracted: &[bool],
    alpha: &Rational,
    beta: &Rational,
) -> (bool, bool) {
    let n = g.vertex_count();
    let dc = naive_distances(g, contracted);
    let mut strong = true;
    let weak = !contracted.iter().all(|&x| x);
    let mut weak_pairs = true;
    for u in 0..n {
        for v in u + 1..n {
            let (Some(d), Some(d_c)) = (&base[u][v], &dc[u][v]) else {
                continue;
            };
            let bound = d / alpha - beta;
            if *d_c < bound {
                strong = false;
                if !d_c.is_zero() {
                    weak_pairs = false;
                }
            }
        }
    }
    (strong, weak && weak_pairs)
}

pub fn mask_bits(mask: u64, m: usize) -> Vec<bool> {
    (0..m).map(|i| mask >> i & 1 == 1).collect()
}

pub fn mask_ids(mask: u64, m: usize) -> Vec<usize> {
    (0..m).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Largest valid set by plain filtering of all `2^m` subsets; ties go to the
/// lexicographically smallest sorted id list. `None` when nothing is valid.
pub fn power_set_optimum(g: &Graph, alpha: &Rational, beta: &Rational, weak: bool) -> Option<(usize, Vec<usize>)> {
    let m = g.edge_count();
    let base = naive_distances(g, &vec![false; m]);
    let mut best: Option<(usize, Vec<usize>)> = None;
    for mask in 0..1u64 << m {
        let (s, w) = naive_validity(g, &base, &mask_bits(mask, m), alpha, beta);
        if !(if weak { w } else { s }) {
            continue;
        }
        let ids = mask_ids(mask, m);
        let better = match &best {
            None => true,
            Some((k, b)) => ids.len() > *k || (ids.len() == *k && ids < *b),
        };
        if better {
            best = Some((ids.len(), ids));
        }
    }
    best
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..1u64 << n).map(move |m| mask_ids(m, n))
}

fn complete(b: &BipartiteGraph, left: &[usize], right: &[usize]) -> bool {
    left.iter().all(|&l| right.iter().all(|&r| b.edges().iter().any(|(x, y, _)| *x == l && *y == r)))
}

/// Every complete pair `(A, B)` of vertex subsets with both sides nonempty.
fn all_bicliques(b: &BipartiteGraph) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for a in subsets(b.left_count()).filter(|a| !a.is_empty()) {
        for r in subsets(b.right_count()).filter(|r| !r.is_empty()) {
            if complete(b, &a, &r) {
                out.push((a.clone(), r));
            }
        }
    }
    out
}

/// Key under which ties are broken: the smaller side's set first (left on
/// equal sizes), then the other side's.
fn tie_key(b: &BipartiteGraph, left: &[usize], right: &[usize]) -> (Vec<usize>, Vec<usize>) {
    if b.right_count() < b.left_count() {
        (right.to_vec(), left.to_vec())
    } else {
        (left.to_vec(), right.to_vec())
    }
}

/// Maximum edge biclique by double-subset filtering.
pub fn double_subset_meb(b: &BipartiteGraph) -> (usize, Biclique) {
    all_bicliques(b)
        .into_iter()
        .map(|(l, r)| (l.len() * r.len(), l, r))
        .min_by(|x, y| y.0.cmp(&x.0).then_with(|| tie_key(b, &x.1, &x.2).cmp(&tie_key(b, &y.1, &y.2))))
        .map(|(v, l, r)| (v, Biclique::new(l, r)))
        .unwrap_or((0, Biclique::empty()))
}

/// Maximum balanced biclique by double-subset filtering.
pub fn double_subset_mbb(b: &BipartiteGraph) -> (usize, Biclique) {
    all_bicliques(b)
        .into_iter()
        .filter(|(l, r)| l.len() == r.len())
        .map(|(l, r)| (l.len(), l, r))
        .min_by(|x, y| y.0.cmp(&x.0).then_with(|| tie_key(b, &x.1, &x.2).cmp(&tie_key(b, &y.1, &y.2))))
        .map(|(v, l, r)| (v, Biclique::new(l, r)))
        .unwrap_or((0, Biclique::empty()))
}

/// Maximal bicliques (no vertex can be added on either side).
pub fn maximal_bicliques(b: &BipartiteGraph) -> Vec<Biclique> {
    let all = all_bicliques(b);
    all.iter()
        .filter(|(l, r)| {
            let grow_left = (0..b.left_count()).any(|x| !l.contains(&x) && complete(b, &[x], r));
            let grow_right = (0..b.right_count()).any(|y| !r.contains(&y) && complete(b, l, &[y]));
            !grow_left && !grow_right
        })
        .map(|(l, r)| Biclique::new(l.clone(), r.clone()))
        .collect()
}

fn connected_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 && (a == x || b == x) {
                let y = if a == x { b } else { a };
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Canonical edge set of a labeled graph: the smallest sorted pair list over
/// all vertex permutations.
fn canonical(edges: &[(usize, usize)], perms: &[Vec<usize>]) -> Vec<(usize, usize)> {
    perms
        .iter()
        .map(|p| {
            let mut e: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b]))).collect();
            e.sort_unstable();
            e
        })
        .min()
        .unwrap()
}

/// One representative of every connected simple graph on `n` vertices.
pub fn connected_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 1 {
        return vec![vec![]];
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    for mask in 0..1u64 << pairs.len() {
        if (mask.count_ones() as usize) < n - 1 || !connected_mask(n, &pairs, mask) {
            continue;
        }
        let edges: Vec<(usize, usize)> = mask_ids(mask, pairs.len()).into_iter().map(|i| pairs[i]).collect();
        seen.insert(canonical(&edges, &perms));
    }
    seen.into_iter().collect()
}

/// Isomorphism classes of the given graphs (all on `n` vertices).
pub fn dedup_up_to_iso(n: usize, graphs: impl IntoIterator<Item = Vec<(usize, usize)>>) -> Vec<Vec<(usize, usize)>> {
    let perms = permutations(n);
    let set: BTreeSet<_> = graphs.into_iter().map(|e| canonical(&e, &perms)).collect();
    set.into_iter().collect()
}

pub fn unit_graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::unit(n, edges.iter().copied()).unwrap()
}

/// Random connected graph: a random spanning tree plus extra random edges.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, extra: usize, weights: &[Rational]) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = BTreeSet::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let (a, b) = (order[i], order[j]);
        edges.insert((a.min(b), a.max(b)));
    }
    for _ in 0..extra {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            edges.insert((a.min(b), a.max(b)));
        }
    }
    let list: Vec<(usize, usize, Rational)> =
        edges.into_iter().map(|(a, b)| (a, b, weights.choose(rng).unwrap().clone())).collect();
    Graph::new(n, list).unwrap()
}

/// Random bipartite graph with each pair present with probability `p`.
pub fn random_bipartite<R: Rng>(rng: &mut R, left: usize, right: usize, p: f64) -> BipartiteGraph {
    let edges: Vec<(usize, usize)> =
        (0..left).flat_map(|l| (0..right).map(move |r| (l, r))).filter(|_| rng.gen_bool(p)).collect();
    BipartiteGraph::unit(left, right, edges).unwrap()
}

pub fn one() -> Rational {
    Rational::one()
}
