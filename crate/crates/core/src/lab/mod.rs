//! Exhaustive adjudication of the structural claims behind the gadget
//! reduction, on instances small enough to enumerate.
//!
//! Every check returns a [`LabReport`]. A `counterexample` verdict always
//! carries a witness, and [`reverify`] re-checks that witness with the plain
//! verifiers, independently of the search that found it.

mod checks;
mod golden;
mod paths;
mod suite;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::contraction::{ContractionError, ContractionSet, Violation};
use crate::graph::{BipartiteGraph, Graph, ParsedGraph};
use crate::reductions::{ContractionShape, ReductionError};
use crate::solvers::{Biclique, SolveError, SolverConfig, DEFAULT_EDGE_CAP, DEFAULT_SIDE_CAP};

pub use checks::{
    check_biclique_lemma, check_corollary_scaling, check_lemma2, check_path_lemma, check_theorem6, reverify,
};
pub use golden::{GoldenDiff, GoldenFile, Regression};
pub use paths::{shortest_paths, simple_paths, Path, PathSet};
pub use suite::{connected_bipartite_graphs, run_suite, FamilySpec, SuiteConfig, SuiteError, SuiteOutput};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    /// Two disjoint contracted edges on a path force the whole path.
    PathLemma,
    /// The same, restricted to shortest paths.
    PathLemmaShortest,
    /// Weak (1,1)-contractions of the gadget with more than one edge are
    /// bicliques of `G`.
    BicliqueLemma,
    /// Gadget optimum is at most `max(1, MEB(B_G))`.
    Thm6Soundness,
    /// Contracting a maximum edge biclique of the gadget is a weak contraction.
    Thm6Completeness,
    /// Weight-beta gadget at `(1, beta)` agrees with the unit gadget at `(1, 1)`.
    CorollaryScaling,
    /// Tensor lift and projection of bicliques.
    Lemma2Lift,
}

impl Claim {
    pub const ALL: [Claim; 7] = [
        Claim::PathLemma,
        Claim::PathLemmaShortest,
        Claim::BicliqueLemma,
        Claim::Thm6Soundness,
        Claim::Thm6Completeness,
        Claim::CorollaryScaling,
        Claim::Lemma2Lift,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Claim::PathLemma => "path-lemma",
            Claim::PathLemmaShortest => "path-lemma-shortest",
            Claim::BicliqueLemma => "biclique-lemma",
            Claim::Thm6Soundness => "thm6-soundness",
            Claim::Thm6Completeness => "thm6-completeness",
            Claim::CorollaryScaling => "corollary-scaling",
            Claim::Lemma2Lift => "lemma2-lift",
        }
    }

    /// Claims about the gadget or tensor need a bipartite input.
    pub fn needs_bipartite(&self) -> bool {
        !matches!(self, Claim::PathLemma | Claim::PathLemmaShortest)
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Claim {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Claim::ALL.into_iter().find(|c| c.as_str() == s).ok_or_else(|| format!("unknown claim {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Counterexample,
    /// The claim's hypothesis matched nothing on this instance.
    Vacuous,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Counterexample => "counterexample",
            Verdict::Vacuous => "vacuous",
        })
    }
}

/// Which instance a report is about. `params` is a complete textual encoding
/// of the graph (plus any claim parameters), so a report can be re-checked
/// without the generator that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub family: String,
    pub params: String,
    pub seed: Option<u64>,
}

impl Instance {
    pub fn of_graph(g: &Graph) -> Self {
        Instance { family: "adhoc".into(), params: encode_graph(g), seed: None }
    }

    pub fn of_bipartite(b: &BipartiteGraph) -> Self {
        Instance { family: "adhoc".into(), params: encode_bipartite(b), seed: None }
    }

    /// Stable identity used by golden files.
    pub fn key(&self) -> String {
        match self.seed {
            Some(seed) => format!("{}|{}|seed={}", self.family, self.params, seed),
            None => format!("{}|{}", self.family, self.params),
        }
    }

    /// Decodes the graph from `params`.
    pub fn graph(&self) -> Result<ParsedGraph, LabError> {
        decode_graph(&self.params)
    }

    /// Value of a `name=value` token in `params`.
    pub fn param(&self, name: &str) -> Option<&str> {
        self.params.split_whitespace().find_map(|tok| tok.strip_prefix(name).and_then(|rest| rest.strip_prefix('=')))
    }

    pub(crate) fn with_param(mut self, name: &str, value: impl fmt::Display) -> Self {
        self.params = format!("{} {name}={value}", self.params);
        self
    }
}

fn encode_edges(pairs: impl Iterator<Item = (usize, usize)>) -> String {
    let parts: Vec<String> = pairs.map(|(a, b)| format!("{a}-{b}")).collect();
    if parts.is_empty() {
        "-".into()
    } else {
        parts.join(",")
    }
}

fn encode_graph(g: &Graph) -> String {
    format!("n={} edges={}", g.vertex_count(), encode_edges(g.edges().iter().map(|e| (e.u, e.v))))
}

fn encode_bipartite(b: &BipartiteGraph) -> String {
    format!(
        "left={} right={} edges={}",
        b.left_count(),
        b.right_count(),
        encode_edges(b.edges().iter().map(|(l, r, _)| (*l, *r)))
    )
}

fn decode_graph(params: &str) -> Result<ParsedGraph, LabError> {
    let bad = || LabError::BadInstance(params.to_string());
    let mut n = None;
    let mut left = None;
    let mut right = None;
    let mut edges = None;
    for tok in params.split_whitespace() {
        let Some((k, v)) = tok.split_once('=') else { continue };
        match k {
            "n" => n = Some(v.parse::<usize>().map_err(|_| bad())?),
            "left" => left = Some(v.parse::<usize>().map_err(|_| bad())?),
            "right" => right = Some(v.parse::<usize>().map_err(|_| bad())?),
            "edges" => edges = Some(v),
            _ => {}
        }
    }
    let mut pairs = Vec::new();
    match edges.ok_or_else(bad)? {
        "-" => {}
        list => {
            for item in list.split(',') {
                let (a, b) = item.split_once('-').ok_or_else(bad)?;
                pairs.push((a.parse::<usize>().map_err(|_| bad())?, b.parse::<usize>().map_err(|_| bad())?));
            }
        }
    }
    match (n, left, right) {
        (Some(n), None, None) => Ok(ParsedGraph::General(Graph::unit(n, pairs).map_err(|_| bad())?)),
        (None, Some(l), Some(r)) => Ok(ParsedGraph::Bipartite(BipartiteGraph::unit(l, r, pairs).map_err(|_| bad())?)),
        _ => Err(bad()),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    /// Candidate sets (contractions, bicliques or samples) examined.
    pub enumerated: u64,
    /// Path enumeration hit the length cap.
    pub truncated: bool,
    pub elapsed_ms: u64,
}

/// Counterexample (or recorded evidence) attached to a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LabWitness {
    /// `contraction` is valid, `path` (vertices) carries the two disjoint
    /// contracted edges, and `missing_edge` on the path is not contracted.
    Path { contraction: ContractionSet, path: Vec<usize>, disjoint_edges: [usize; 2], missing_edge: usize },
    /// A valid gadget contraction and its shape.
    Shape { contraction: ContractionSet, shape: ContractionShape },
    /// A valid gadget contraction larger than `bound`.
    Bound { contraction: ContractionSet, bound: u64 },
    /// A gadget biclique (view indices), its edge set and the verdict on it.
    BicliqueContraction { biclique: Biclique, contraction: ContractionSet, valid: bool, violation: Option<Violation> },
    /// A gadget edge set judged differently at the two scales.
    Scaling { contraction: ContractionSet, scaled_valid: bool, unit_valid: bool },
    /// A factor or tensor biclique at which a tensor map failed.
    Tensor { stage: TensorStage, biclique: Biclique },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TensorStage {
    /// Lift of a factor biclique is not complete.
    Lift,
    /// Projection of the tensor's balanced biclique is not complete.
    Project,
    /// Tensor balanced optimum is below the factor's edge optimum.
    Bound,
}

#[derive(Debug, Clone, Serialize)]
pub struct LabReport {
    pub claim: Claim,
    pub instance: Instance,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<LabWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
    pub stats: Stats,
}

impl LabReport {
    pub(crate) fn new(claim: Claim, instance: Instance, verdict: Verdict) -> Self {
        LabReport { claim, instance, verdict, witness: None, details: None, stats: Stats::default() }
    }

    /// Same report with the wall-clock field cleared, for comparisons.
    pub fn without_timing(&self) -> LabReport {
        let mut r = self.clone();
        r.stats.elapsed_ms = 0;
        r
    }

    /// JSON with the wall-clock field cleared; byte-stable for a given input.
    pub fn stable_json(&self) -> String {
        serde_json::to_string(&self.without_timing()).expect("reports serialize")
    }

    pub fn with_family(mut self, family: &str, seed: Option<u64>) -> Self {
        self.instance.family = family.to_string();
        self.instance.seed = seed;
        self
    }
}

/// Enumeration limits for the checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabCaps {
    /// Largest edge count whose power set is enumerated.
    pub edge_cap: usize,
    /// Largest smaller-side size for biclique searches.
    pub side_cap: usize,
    /// Longest simple path (in edges) enumerated; `None` means diameter + 2.
    pub path_len: Option<usize>,
}

impl Default for LabCaps {
    fn default() -> Self {
        LabCaps { edge_cap: DEFAULT_EDGE_CAP, side_cap: DEFAULT_SIDE_CAP, path_len: None }
    }
}

impl LabCaps {
    pub(crate) fn solver_config(&self) -> SolverConfig {
        SolverConfig { edge_cap: self.edge_cap, side_cap: self.side_cap, threads: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabError {
    #[error("input graph is disconnected")]
    Disconnected,
    #[error("input graph must have unit edge weights")]
    NotUnitWeight,
    #[error("claim {0} needs a bipartite instance")]
    NotBipartite(Claim),
    #[error("gadget weight must be positive")]
    NonPositiveBeta,
    #[error("cannot decode instance parameters {0:?}")]
    BadInstance(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Contraction(#[from] ContractionError),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_params_round_trip() {
        let g = Graph::cycle(5);
        let inst = Instance::of_graph(&g);
        assert_eq!(inst.params, "n=5 edges=0-1,0-4,1-2,2-3,3-4");
        assert_eq!(inst.graph().unwrap(), ParsedGraph::General(g));

        let b = BipartiteGraph::unit(2, 1, [(0, 0), (1, 0)]).unwrap();
        let inst = Instance::of_bipartite(&b).with_param("beta", "1/2");
        assert_eq!(inst.param("beta"), Some("1/2"));
        assert_eq!(inst.param("left"), Some("2"));
        assert_eq!(inst.graph().unwrap(), ParsedGraph::Bipartite(b));

        let empty = BipartiteGraph::unit(1, 1, []).unwrap();
        assert_eq!(Instance::of_bipartite(&empty).graph().unwrap(), ParsedGraph::Bipartite(empty));
    }

    #[test]
    fn bad_params_are_reported() {
        let inst = Instance { family: "x".into(), params: "n=3 edges=0-9".into(), seed: None };
        assert!(matches!(inst.graph(), Err(LabError::BadInstance(_))));
        let inst = Instance { family: "x".into(), params: "edges=0-1".into(), seed: None };
        assert!(inst.graph().is_err());
    }

    #[test]
    fn claim_names_round_trip() {
        for c in Claim::ALL {
            assert_eq!(c.as_str().parse::<Claim>().unwrap(), c);
            assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{c}\""));
        }
        assert!("lemma9".parse::<Claim>().is_err());
    }
}
