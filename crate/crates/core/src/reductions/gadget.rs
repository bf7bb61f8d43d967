use num_traits::Signed;
use serde::Serialize;

use super::{ReductionError, Side};
use crate::contraction::{ContractionChecker, ContractionSet, Mode, Tolerance, Violation};
use crate::graph::{BipartiteGraph, Graph, Rational};
use crate::solvers::Biclique;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    /// Edge of the copy of `G`.
    Core,
    /// Edge joining a vertex to its pendant copy.
    Matching,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Layer {
    A,
    B,
}

/// Where a gadget vertex came from: side and index in `G`, and which copy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GadgetVertex {
    pub side: Side,
    pub index: usize,
    pub copy: Layer,
}

/// The pendant gadget `B_G` of a bipartite graph `G = (V, U)`.
///
/// The gadget is itself bipartite with sides `V_a + U_b` and `U_a + V_b`;
/// it is stored as that [`BipartiteGraph`], so vertex ids of the combined
/// graph are
///
/// ```text
/// V_a: 0 .. |V|            U_b: |V| .. |V|+|U|
/// U_a: s .. s+|U|          V_b: s+|U| .. s+|U|+|V|     (s = |V|+|U|)
/// ```
///
/// A biclique of `G` is a biclique of the gadget with the same indices.
#[derive(Debug, Clone)]
pub struct GadgetGraph {
    core: BipartiteGraph,
    weight: Rational,
    view: BipartiteGraph,
    edge_kinds: Vec<EdgeKind>,
}

impl GadgetGraph {
    pub fn core(&self) -> &BipartiteGraph {
        &self.core
    }

    pub fn weight(&self) -> &Rational {
        &self.weight
    }

    /// Tolerance `(1, weight)`: the unit-weight `(1, 1)` test rescaled.
    pub fn tolerance(&self) -> Tolerance {
        Tolerance::additive(self.weight.clone()).expect("gadget weight is positive")
    }

    pub fn graph(&self) -> &Graph {
        self.view.as_graph()
    }

    pub fn bipartite(&self) -> &BipartiteGraph {
        &self.view
    }

    pub fn edge_kind(&self, id: usize) -> EdgeKind {
        self.edge_kinds[id]
    }

    pub fn edge_kinds(&self) -> &[EdgeKind] {
        &self.edge_kinds
    }

    fn sizes(&self) -> (usize, usize) {
        (self.core.left_count(), self.core.right_count())
    }

    /// Combined-graph id of a vertex of `G` in the given copy.
    pub fn vertex(&self, side: Side, index: usize, copy: Layer) -> usize {
        let (nv, nu) = self.sizes();
        let s = nv + nu;
        match (side, copy) {
            (Side::Left, Layer::A) => index,
            (Side::Right, Layer::B) => nv + index,
            (Side::Right, Layer::A) => s + index,
            (Side::Left, Layer::B) => s + nu + index,
        }
    }

    pub fn origin(&self, v: usize) -> GadgetVertex {
        let (nv, nu) = self.sizes();
        let s = nv + nu;
        let (side, index, copy) = if v < nv {
            (Side::Left, v, Layer::A)
        } else if v < s {
            (Side::Right, v - nv, Layer::B)
        } else if v < s + nu {
            (Side::Right, v - s, Layer::A)
        } else {
            (Side::Left, v - s - nu, Layer::B)
        };
        GadgetVertex { side, index, copy }
    }

    pub fn pendant_of(&self, v: usize) -> usize {
        let o = self.origin(v);
        let other = match o.copy {
            Layer::A => Layer::B,
            Layer::B => Layer::A,
        };
        self.vertex(o.side, o.index, other)
    }

    /// Edge ids of every pair of a biclique given in gadget (view) indices.
    pub fn biclique_edges(&self, b: &Biclique) -> Option<ContractionSet> {
        let offset = self.view.left_count();
        let g = self.graph();
        let mut ids = Vec::with_capacity(b.edge_count());
        for &l in &b.left {
            for &r in &b.right {
                ids.push(g.edge_between(l, offset + r)?);
            }
        }
        Some(ContractionSet::new(ids))
    }
}

/// Builds the gadget with every edge at `weight`. `g` must be connected.
pub fn build_gadget(g: &BipartiteGraph, weight: &Rational) -> Result<GadgetGraph, ReductionError> {
    if !g.is_connected() {
        return Err(ReductionError::Disconnected);
    }
    build_gadget_unchecked(g, weight)
}

/// [`build_gadget`] without the connectivity requirement. The construction
/// and its size formulas are well defined on any bipartite graph; only the
/// contraction arguments about it need connectivity.
pub fn build_gadget_unchecked(g: &BipartiteGraph, weight: &Rational) -> Result<GadgetGraph, ReductionError> {
    if !weight.is_positive() {
        return Err(ReductionError::NonPositiveWeight(weight.clone()));
    }
    let (nv, nu) = (g.left_count(), g.right_count());
    let mut edges: Vec<(usize, usize, Rational)> = g.edges().iter().map(|(l, r, _)| (*l, *r, weight.clone())).collect();
    // view-left V_a[i] = i pairs with view-right V_b[i] = nu + i
    edges.extend((0..nv).map(|i| (i, nu + i, weight.clone())));
    // view-left U_b[j] = nv + j pairs with view-right U_a[j] = j
    edges.extend((0..nu).map(|j| (nv + j, j, weight.clone())));
    let view = BipartiteGraph::new(nv + nu, nu + nv, edges)?;

    let s = nv + nu;
    let edge_kinds = view
        .as_graph()
        .edges()
        .iter()
        .map(|e| {
            let core = e.u < nv && e.v >= s && e.v < s + nu;
            if core {
                EdgeKind::Core
            } else {
                EdgeKind::Matching
            }
        })
        .collect();
    Ok(GadgetGraph { core: g.clone(), weight: weight.clone(), view, edge_kinds })
}

/// What a contraction of the gadget looks like from the biclique side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum ContractionShape {
    /// Exactly the edge set of a biclique of `G` (indices of `G`).
    Biclique { biclique: Biclique },
    /// At most one edge.
    TooSmall,
    /// Uses a vertex-to-pendant edge.
    ContainsMatchingEdge,
    /// Core edges only, but not all pairs between their endpoints.
    NotComplete,
}

impl ContractionShape {
    pub fn biclique(&self) -> Option<&Biclique> {
        match self {
            ContractionShape::Biclique { biclique } => Some(biclique),
            _ => None,
        }
    }
}

/// Shape of a contraction without checking its validity.
pub(crate) fn shape_of(bg: &GadgetGraph, c: &ContractionSet) -> ContractionShape {
    if c.len() <= 1 {
        return ContractionShape::TooSmall;
    }
    if c.ids().iter().any(|&id| bg.edge_kind(id) == EdgeKind::Matching) {
        return ContractionShape::ContainsMatchingEdge;
    }
    let s = bg.core.left_count() + bg.core.right_count();
    let g = bg.graph();
    let left: Vec<usize> = c.ids().iter().map(|&id| g.edge(id).u).collect();
    let right: Vec<usize> = c.ids().iter().map(|&id| g.edge(id).v - s).collect();
    let b = Biclique::new(left, right);
    if b.edge_count() == c.len() {
        ContractionShape::Biclique { biclique: b }
    } else {
        ContractionShape::NotComplete
    }
}

/// Maps a valid weak contraction of the gadget (tolerance `(1, weight)`) to
/// the biclique of `G` it contracts, if it is one.
pub fn contraction_to_biclique(bg: &GadgetGraph, c: &ContractionSet) -> Result<ContractionShape, ReductionError> {
    c.validate(bg.graph())?;
    let checker = ContractionChecker::new(bg.graph(), &bg.tolerance())?;
    if let Some(v) = checker.violation(c, Mode::Weak) {
        return Err(ReductionError::NotValidContraction(Box::new(v)));
    }
    Ok(shape_of(bg, c))
}

/// Edge set of a biclique together with the verifier's verdict on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BicliqueContraction {
    pub contraction: ContractionSet,
    pub valid: bool,
    pub violation: Option<Violation>,
}

/// Contracts every edge of a biclique of the gadget (given in gadget view
/// indices, so bicliques of `G` and ones using pendants are both accepted)
/// and reports whether that is a weak contraction at `(1, weight)`.
pub fn biclique_to_contraction(bg: &GadgetGraph, b: &Biclique) -> Result<BicliqueContraction, ReductionError> {
    let in_range =
        b.left.iter().all(|&l| l < bg.view.left_count()) && b.right.iter().all(|&r| r < bg.view.right_count());
    if !in_range || !b.is_complete_in(&bg.view) {
        return Err(ReductionError::InvalidBiclique);
    }
    let contraction = bg.biclique_edges(b).ok_or(ReductionError::InvalidBiclique)?;
    let checker = ContractionChecker::new(bg.graph(), &bg.tolerance())?;
    let violation = checker.violation(&contraction, Mode::Weak);
    Ok(BicliqueContraction { contraction, valid: violation.is_none(), violation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contraction::{contracted_distance, is_weak_contraction};
    use crate::graph::Distance;
    use crate::graph::{is_connected, rational_from_int};
    use crate::solvers::{max_edge_biclique_exact, max_weak_contraction_exact, SolverConfig};

    fn one() -> Rational {
        rational_from_int(1)
    }

    #[test]
    fn gadget_of_single_edge_is_a_path_of_three_edges() {
        let bg = build_gadget(&BipartiteGraph::complete(1, 1), &one()).unwrap();
        let g = bg.graph();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 3));
        let degrees: Vec<usize> = (0..4).map(|v| g.degree(v)).collect();
        assert_eq!(degrees.iter().filter(|&&d| d == 1).count(), 2);
        // v_b - v_a - u_a - u_b
        let va = bg.vertex(Side::Left, 0, Layer::A);
        let vb = bg.vertex(Side::Left, 0, Layer::B);
        let ua = bg.vertex(Side::Right, 0, Layer::A);
        let ub = bg.vertex(Side::Right, 0, Layer::B);
        assert!(g.edge_between(vb, va).is_some());
        assert!(g.edge_between(va, ua).is_some());
        assert!(g.edge_between(ua, ub).is_some());
        assert_eq!(bg.pendant_of(va), vb);
        assert_eq!(bg.pendant_of(ub), ua);
    }

    #[test]
    fn size_formulas() {
        // 3 + 4 vertices and 5 edges cannot be connected
        let five = BipartiteGraph::unit(3, 4, [(0, 0), (0, 1), (1, 1), (2, 2), (2, 3)]).unwrap();
        assert_eq!(build_gadget(&five, &one()).unwrap_err(), ReductionError::Disconnected);
        let bg = build_gadget_unchecked(&five, &one()).unwrap();
        assert_eq!(bg.graph().vertex_count(), 14);
        assert_eq!(bg.graph().edge_count(), 12);

        let six = BipartiteGraph::unit(3, 4, [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 3)]).unwrap();
        let bg = build_gadget(&six, &one()).unwrap();
        assert_eq!(bg.graph().edge_count(), 13);
    }

    #[test]
    fn kinds_and_pendants() {
        let g = BipartiteGraph::unit(2, 2, [(0, 0), (0, 1), (1, 1)]).unwrap();
        let bg = build_gadget(&g, &one()).unwrap();
        let core = bg.edge_kinds().iter().filter(|&&k| k == EdgeKind::Core).count();
        assert_eq!(core, 3);
        assert_eq!(bg.edge_kinds().len(), 3 + 4);
        for v in 0..bg.graph().vertex_count() {
            let o = bg.origin(v);
            assert_eq!(bg.vertex(o.side, o.index, o.copy), v);
            if o.copy == Layer::B {
                assert_eq!(bg.graph().degree(v), 1);
            }
        }
        assert!(is_connected(bg.graph()));
        assert!(bg.graph().two_coloring().is_some());
    }

    #[test]
    fn refuses_disconnected_and_bad_weight() {
        let g = BipartiteGraph::unit(2, 2, [(0, 0), (1, 1)]).unwrap();
        assert_eq!(build_gadget(&g, &one()).unwrap_err(), ReductionError::Disconnected);
        let k = BipartiteGraph::complete(1, 1);
        assert!(matches!(build_gadget(&k, &rational_from_int(0)), Err(ReductionError::NonPositiveWeight(_))));
    }

    #[test]
    fn single_edge_gadget_contractions() {
        let bg = build_gadget(&BipartiteGraph::complete(1, 1), &one()).unwrap();
        let opt = max_weak_contraction_exact(bg.graph(), &bg.tolerance(), &SolverConfig::default()).unwrap();
        assert_eq!(opt.objective, 1);

        let core = Biclique::new([0], [0]);
        let verdict = biclique_to_contraction(&bg, &core).unwrap();
        assert!(verdict.valid);
        assert_eq!(verdict.contraction.len(), 1);
        assert_eq!(contraction_to_biclique(&bg, &verdict.contraction).unwrap(), ContractionShape::TooSmall);
        assert_eq!(contraction_to_biclique(&bg, &ContractionSet::empty()).unwrap(), ContractionShape::TooSmall);
        let empty = biclique_to_contraction(&bg, &Biclique::empty()).unwrap();
        assert!(empty.valid && empty.contraction.is_empty());
    }

    #[test]
    fn star_biclique_contraction_is_judged_not_assumed() {
        // path v0 - u0 - v1 as L = {v0, v1}, R = {u0}; star K_{2,1}
        let g = BipartiteGraph::unit(2, 1, [(0, 0), (1, 0)]).unwrap();
        let bg = build_gadget(&g, &one()).unwrap();
        let star = Biclique::new([0, 1], [0]);
        let verdict = biclique_to_contraction(&bg, &star).unwrap();
        let recheck = is_weak_contraction(bg.graph(), &verdict.contraction, &bg.tolerance()).unwrap();
        assert_eq!(verdict.valid, recheck);
        assert!(!verdict.valid);
        match verdict.violation {
            Some(Violation::Distance { ref original, ref contracted, .. }) => {
                assert_eq!(original - contracted, rational_from_int(2));
            }
            ref other => panic!("unexpected {other:?}"),
        }
        // pendants of v0 and v1 sit at distance 4 and end up at distance 2
        let (p0, p1) = (bg.pendant_of(0), bg.pendant_of(1));
        assert_eq!(bg.origin(p0).copy, Layer::B);
        let d = contracted_distance(bg.graph(), &verdict.contraction, p0, p1).unwrap();
        assert_eq!(d, Distance::Finite(rational_from_int(2)));
    }

    #[test]
    fn invalid_inputs_are_refused() {
        let g = BipartiteGraph::unit(2, 2, [(0, 0), (0, 1), (1, 1)]).unwrap();
        let bg = build_gadget(&g, &one()).unwrap();
        assert_eq!(
            biclique_to_contraction(&bg, &Biclique::new([0, 1], [0, 1])).unwrap_err(),
            ReductionError::InvalidBiclique
        );
        assert_eq!(
            biclique_to_contraction(&bg, &Biclique::new([9], [0])).unwrap_err(),
            ReductionError::InvalidBiclique
        );
        let all = ContractionSet::all(bg.graph());
        assert!(matches!(
            contraction_to_biclique(&bg, &all),
            Err(ReductionError::NotValidContraction(v)) if *v == Violation::NotProperSubset
        ));
    }

    #[test]
    fn gadget_biclique_may_use_pendants() {
        let bg = build_gadget(&BipartiteGraph::complete(1, 1), &one()).unwrap();
        let meb = max_edge_biclique_exact(bg.bipartite(), &SolverConfig::default()).unwrap();
        assert_eq!(meb.objective, 2);
        let b = meb.witness.biclique().unwrap();
        let verdict = biclique_to_contraction(&bg, b).unwrap();
        assert_eq!(verdict.contraction.len(), 2);
        assert!(!verdict.valid);
    }

    #[test]
    fn shapes() {
        let g = BipartiteGraph::complete(2, 2);
        let bg = build_gadget(&g, &one()).unwrap();
        let b = Biclique::new([0, 1], [0]);
        let c = bg.biclique_edges(&b).unwrap();
        assert_eq!(shape_of(&bg, &c), ContractionShape::Biclique { biclique: b });
        let diag = ContractionSet::new([
            bg.biclique_edges(&Biclique::new([0], [0])).unwrap().ids()[0],
            bg.biclique_edges(&Biclique::new([1], [1])).unwrap().ids()[0],
        ]);
        assert_eq!(shape_of(&bg, &diag), ContractionShape::NotComplete);
        let va = bg.vertex(Side::Left, 0, Layer::A);
        let vb = bg.vertex(Side::Left, 0, Layer::B);
        let ua = bg.vertex(Side::Right, 0, Layer::A);
        let with_pendant =
            ContractionSet::new([bg.graph().edge_between(va, vb).unwrap(), bg.graph().edge_between(va, ua).unwrap()]);
        assert_eq!(shape_of(&bg, &with_pendant), ContractionShape::ContainsMatchingEdge);
    }

    #[test]
    fn weight_beta_gadget_uses_beta_everywhere() {
        let beta = Rational::new(3.into(), 2.into());
        let bg = build_gadget(&BipartiteGraph::complete(1, 2), &beta).unwrap();
        assert!(bg.graph().edges().iter().all(|e| e.weight == beta));
        assert_eq!(bg.tolerance().beta(), &beta);
    }
}
