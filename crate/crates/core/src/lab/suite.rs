//! Batch runs over instance families.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::checks::{check_biclique_lemma, check_corollary_scaling, check_lemma2, check_path_lemma, check_theorem6};
use super::{Claim, Instance, LabCaps, LabError, LabReport, Verdict};
use crate::graph::{generate_random_bipartite, parse_rational, BipartiteGraph, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FamilySpec {
    /// Every connected bipartite graph with sides `1..=max_left` by
    /// `1..=max_right` (left side never larger), one per isomorphism class,
    /// optionally limited to `max_vertices` in total.
    BipartiteExhaustive {
        max_left: usize,
        max_right: usize,
        #[serde(default)]
        max_vertices: Option<usize>,
    },
    /// `G(left, right, p)` for each seed; `p` is an exact rational string.
    RandomBipartite { left: usize, right: usize, p: String, seeds: Vec<u64> },
    /// Paths on `2..=max_vertices` vertices.
    Path { max_vertices: usize },
    /// Cycles on `3..=max_vertices` vertices (odd ones only get path claims).
    Cycle { max_vertices: usize },
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::BipartiteExhaustive { .. } => "bipartite-exhaustive",
            FamilySpec::RandomBipartite { .. } => "random-bipartite",
            FamilySpec::Path { .. } => "path",
            FamilySpec::Cycle { .. } => "cycle",
        }
    }
}

fn all_claims() -> Vec<Claim> {
    Claim::ALL.to_vec()
}

fn default_betas() -> Vec<String> {
    vec!["1/2".into(), "1".into(), "3".into()]
}

fn default_trials() -> usize {
    20
}

fn default_edge_cap() -> usize {
    crate::solvers::DEFAULT_EDGE_CAP
}

fn default_side_cap() -> usize {
    crate::solvers::DEFAULT_SIDE_CAP
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(default)]
    pub families: Vec<FamilySpec>,
    #[serde(default = "all_claims")]
    pub claims: Vec<Claim>,
    /// Gadget weights for the scaling claim.
    #[serde(default = "default_betas")]
    pub betas: Vec<String>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub sample_seed: u64,
    #[serde(default = "default_edge_cap")]
    pub edge_cap: usize,
    #[serde(default = "default_side_cap")]
    pub side_cap: usize,
    #[serde(default)]
    pub path_len: Option<usize>,
    #[serde(default)]
    pub threads: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("empty config parses")
    }
}

impl SuiteConfig {
    /// Every claim on every family at sizes that finish in seconds.
    pub fn standard() -> Self {
        SuiteConfig {
            families: vec![
                FamilySpec::BipartiteExhaustive { max_left: 3, max_right: 3, max_vertices: None },
                FamilySpec::RandomBipartite { left: 3, right: 3, p: "2/3".into(), seeds: (1..=5).collect() },
                FamilySpec::Path { max_vertices: 6 },
                FamilySpec::Cycle { max_vertices: 8 },
            ],
            ..SuiteConfig::default()
        }
    }

    pub fn caps(&self) -> LabCaps {
        LabCaps { edge_cap: self.edge_cap, side_cap: self.side_cap, path_len: self.path_len }
    }
}

/// A check that could not run on an instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteError {
    pub claim: Claim,
    pub instance: Instance,
    pub message: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SuiteOutput {
    pub reports: Vec<LabReport>,
    pub errors: Vec<SuiteError>,
}

impl SuiteOutput {
    /// `claim,family,holds,counterexample,vacuous,errors`, one row per pair
    /// that occurred, claims in canonical order and families in first-seen
    /// order.
    pub fn summary_csv(&self) -> String {
        let mut families: Vec<&str> = Vec::new();
        let seen = self
            .reports
            .iter()
            .map(|r| r.instance.family.as_str())
            .chain(self.errors.iter().map(|e| e.instance.family.as_str()));
        for f in seen {
            if !families.contains(&f) {
                families.push(f);
            }
        }
        let mut out = String::from("claim,family,holds,counterexample,vacuous,errors\n");
        for claim in Claim::ALL {
            for &family in &families {
                let of = |v: Verdict| {
                    self.reports
                        .iter()
                        .filter(|r| r.claim == claim && r.instance.family == family && r.verdict == v)
                        .count()
                };
                let errors = self.errors.iter().filter(|e| e.claim == claim && e.instance.family == family).count();
                let (h, c, v) = (of(Verdict::Holds), of(Verdict::Counterexample), of(Verdict::Vacuous));
                if h + c + v + errors > 0 {
                    writeln!(out, "{claim},{family},{h},{c},{v},{errors}").unwrap();
                }
            }
        }
        out
    }
}

struct SuiteInstance {
    family: &'static str,
    seed: Option<u64>,
    graph: Graph,
    bipartite: Option<BipartiteGraph>,
    /// Set when the instance could not be generated.
    error: Option<String>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    permute(&mut p, 0, &mut out);
    out
}

fn permute(p: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == p.len() {
        out.push(p.clone());
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, out);
        p.swap(k, i);
    }
}

/// Every connected bipartite graph with exactly `left` and `right` vertices,
/// one per isomorphism class (side-preserving, plus side swap when the sides
/// are equal), as the lexicographically smallest edge mask of its class.
/// Classes are listed in increasing mask order.
pub fn connected_bipartite_graphs(left: usize, right: usize) -> Vec<BipartiteGraph> {
    assert!(left * right <= 24, "exhaustive enumeration is limited to 24 potential edges");
    let bits = left * right;
    let lp = permutations(left);
    let rp = permutations(right);
    let image = |mask: u32, pl: &[usize], pr: &[usize], swap: bool| -> u32 {
        let mut out = 0;
        for (l, &a) in pl.iter().enumerate() {
            for (r, &b) in pr.iter().enumerate() {
                if mask >> (l * right + r) & 1 == 1 {
                    let (a, b) = if swap { (b, a) } else { (a, b) };
                    out |= 1 << (a * right + b);
                }
            }
        }
        out
    };
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << bits) {
        let mut canonical = true;
        'perm: for pl in &lp {
            for pr in &rp {
                for swap in [false, true] {
                    if swap && left != right {
                        continue;
                    }
                    if image(mask, pl, pr, swap) < mask {
                        canonical = false;
                        break 'perm;
                    }
                }
            }
        }
        if !canonical {
            continue;
        }
        let edges = (0..bits).filter(|i| mask >> i & 1 == 1).map(|i| (i / right, i % right));
        let b = BipartiteGraph::unit(left, right, edges).expect("mask edges are distinct");
        if b.is_connected() {
            out.push(b);
        }
    }
    out
}

fn expand(spec: &FamilySpec) -> Vec<SuiteInstance> {
    let family = spec.name();
    match spec {
        FamilySpec::BipartiteExhaustive { max_left, max_right, max_vertices } => {
            let mut out = Vec::new();
            for l in 1..=*max_left {
                for r in l..=*max_right {
                    if max_vertices.is_some_and(|m| l + r > m) {
                        continue;
                    }
                    for b in connected_bipartite_graphs(l, r) {
                        out.push(SuiteInstance {
                            family,
                            seed: None,
                            graph: b.as_graph().clone(),
                            bipartite: Some(b),
                            error: None,
                        });
                    }
                }
            }
            out
        }
        FamilySpec::RandomBipartite { left, right, p, seeds } => seeds
            .iter()
            .map(|&seed| {
                let generated = parse_rational(p)
                    .ok_or_else(|| format!("bad probability {p:?}"))
                    .and_then(|p| generate_random_bipartite(*left, *right, &p, seed).map_err(|e| e.to_string()));
                match generated {
                    Ok(b) => SuiteInstance {
                        family,
                        seed: Some(seed),
                        graph: b.as_graph().clone(),
                        bipartite: Some(b),
                        error: None,
                    },
                    Err(e) => SuiteInstance {
                        family,
                        seed: Some(seed),
                        graph: Graph::unit(0, []).expect("empty graph"),
                        bipartite: None,
                        error: Some(e),
                    },
                }
            })
            .collect(),
        FamilySpec::Path { max_vertices } => (2..=*max_vertices).map(|n| general(family, Graph::path(n))).collect(),
        FamilySpec::Cycle { max_vertices } => (3..=*max_vertices).map(|n| general(family, Graph::cycle(n))).collect(),
    }
}

fn general(family: &'static str, graph: Graph) -> SuiteInstance {
    let bipartite = BipartiteGraph::from_graph(&graph).map(|(b, _)| b);
    SuiteInstance { family, seed: None, graph, bipartite, error: None }
}

/// One unit of work: a check on an instance. The theorem check yields both
/// of its claims.
#[derive(Clone)]
enum Job {
    Path(bool),
    Biclique,
    Theorem6 { soundness: bool, completeness: bool },
    Scaling(String),
    Lemma2,
}

fn jobs_for(config: &SuiteConfig) -> Vec<(Claim, Job)> {
    let mut out = Vec::new();
    let wants = |c: Claim| config.claims.contains(&c);
    let mut theorem_done = false;
    for &claim in &config.claims {
        match claim {
            Claim::PathLemma => out.push((claim, Job::Path(false))),
            Claim::PathLemmaShortest => out.push((claim, Job::Path(true))),
            Claim::BicliqueLemma => out.push((claim, Job::Biclique)),
            Claim::Thm6Soundness | Claim::Thm6Completeness if !theorem_done => {
                theorem_done = true;
                out.push((
                    claim,
                    Job::Theorem6 {
                        soundness: wants(Claim::Thm6Soundness),
                        completeness: wants(Claim::Thm6Completeness),
                    },
                ));
            }
            Claim::Thm6Soundness | Claim::Thm6Completeness => {}
            Claim::CorollaryScaling => {
                out.extend(config.betas.iter().map(|b| (claim, Job::Scaling(b.clone()))));
            }
            Claim::Lemma2Lift => out.push((claim, Job::Lemma2)),
        }
    }
    out
}

fn run_job(inst: &SuiteInstance, claim: Claim, job: &Job, config: &SuiteConfig) -> Vec<Result<LabReport, SuiteError>> {
    let caps = config.caps();
    let fail = |claim: Claim, instance: Instance, message: String| SuiteError { claim, instance, message };
    let placeholder = match &inst.bipartite {
        Some(b) if claim.needs_bipartite() => Instance::of_bipartite(b),
        _ => Instance::of_graph(&inst.graph),
    };
    let placeholder = Instance { family: inst.family.to_string(), seed: inst.seed, ..placeholder };
    if let Some(e) = &inst.error {
        return vec![Err(fail(claim, placeholder, e.clone()))];
    }
    let tag = |r: LabReport| r.with_family(inst.family, inst.seed);
    let bip = || inst.bipartite.as_ref().ok_or(LabError::NotBipartite(claim));
    let results: Result<Vec<LabReport>, LabError> = match job {
        Job::Path(shortest) => check_path_lemma(&inst.graph, *shortest, &caps).map(|r| vec![r]),
        Job::Biclique => bip().and_then(|b| check_biclique_lemma(b, &caps)).map(|r| vec![r]),
        Job::Theorem6 { soundness, completeness } => bip().and_then(|b| check_theorem6(b, &caps)).map(|(s, c)| {
            let mut v = Vec::new();
            if *soundness {
                v.push(s);
            }
            if *completeness {
                v.push(c);
            }
            v
        }),
        Job::Scaling(beta) => match parse_rational(beta) {
            Some(beta) => bip()
                .and_then(|b| check_corollary_scaling(b, &beta, config.trials, config.sample_seed))
                .map(|r| vec![r]),
            None => Err(LabError::BadInstance(format!("beta={beta}"))),
        },
        Job::Lemma2 => bip().and_then(|b| check_lemma2(b, &caps)).map(|r| vec![r]),
    };
    match results {
        Ok(reports) => reports.into_iter().map(|r| Ok(tag(r))).collect(),
        // odd cycles and the like simply have no bipartite claims
        Err(LabError::NotBipartite(_)) => Vec::new(),
        Err(e) => {
            let instance = match job {
                Job::Scaling(beta) => placeholder.with_param("beta", beta),
                _ => placeholder,
            };
            vec![Err(fail(claim, instance, e.to_string()))]
        }
    }
}

/// Runs every configured claim on every instance of every family.
///
/// Instances may be checked concurrently, but reports come back in config
/// order: families, then instances, then claims. A failing check is recorded
/// in `errors` and never stops the suite.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteOutput, rayon::ThreadPoolBuildError> {
    let instances: Vec<SuiteInstance> = config.families.iter().flat_map(expand).collect();
    let jobs = jobs_for(config);
    let work: Vec<(&SuiteInstance, Claim, &Job)> =
        instances.iter().flat_map(|inst| jobs.iter().map(move |(c, j)| (inst, *c, j))).collect();
    let run = || -> Vec<Vec<Result<LabReport, SuiteError>>> {
        work.par_iter().map(|(inst, claim, job)| run_job(inst, *claim, job, config)).collect()
    };
    let results = match config.threads {
        Some(t) => rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build()?.install(run),
        None => run(),
    };
    let mut out = SuiteOutput::default();
    for r in results.into_iter().flatten() {
        match r {
            Ok(report) => out.reports.push(report),
            Err(e) => out.errors.push(e),
        }
    }
    Ok(out)
}
