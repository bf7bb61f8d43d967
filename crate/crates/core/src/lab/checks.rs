use std::time::Instant;

use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::paths::{shortest_paths, simple_paths, Path};
use super::{Claim, Instance, LabCaps, LabError, LabReport, LabWitness, TensorStage, Verdict};
use crate::contraction::{is_weak_contraction, violation_witness, ContractionChecker, ContractionSet, Mode, Tolerance};
use crate::graph::{is_connected, BipartiteGraph, Graph, ParsedGraph, Rational};
use crate::reductions::{
    biclique_to_contraction, build_gadget, build_tensor_square, lift_biclique, project_biclique, shape_of, GadgetGraph,
};
use crate::solvers::{
    enumerate_valid_weak_contractions, max_balanced_biclique_exact, max_edge_biclique_exact,
    max_weak_contraction_exact, Biclique,
};

fn millis(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

/// Every valid weak contraction, smallest first, lexicographic within a size.
fn valid_weak_by_size(g: &Graph, t: &Tolerance, caps: &LabCaps) -> Result<Vec<ContractionSet>, LabError> {
    let mut all: Vec<ContractionSet> = enumerate_valid_weak_contractions(g, t, &caps.solver_config())?.collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(all)
}

fn diameter(g: &Graph) -> usize {
    (0..g.vertex_count()).flat_map(|s| g.bfs_levels(s)).filter(|&d| d != usize::MAX).max().unwrap_or(0)
}

/// Outcome of testing one path against one contraction.
enum PathMatch {
    /// Fewer than two disjoint contracted edges on the path.
    NotApplicable,
    Consistent,
    Violated {
        disjoint: [usize; 2],
        missing: usize,
    },
}

fn match_path(p: &Path, in_c: &[bool]) -> PathMatch {
    let positions: Vec<usize> = (0..p.edges.len()).filter(|&i| in_c[p.edges[i]]).collect();
    // on a simple path, edges i and j are vertex-disjoint iff j >= i + 2
    let pair =
        positions.iter().find_map(|&i| positions.iter().find(|&&j| j >= i + 2).map(|&j| [p.edges[i], p.edges[j]]));
    let Some(disjoint) = pair else {
        return PathMatch::NotApplicable;
    };
    match p.edges.iter().find(|&&id| !in_c[id]) {
        Some(&missing) => PathMatch::Violated { disjoint, missing },
        None => PathMatch::Consistent,
    }
}

/// Path lemma on a connected unit-weight graph: for every valid weak
/// (1,1)-contraction `C` and every path `P` (all simple paths up to the
/// length cap, or only shortest paths), two vertex-disjoint edges of `P` in
/// `C` force `P` inside `C`.
///
/// Contractions are scanned smallest first, so a reported counterexample
/// uses as few edges as possible.
pub fn check_path_lemma(g: &Graph, shortest_only: bool, caps: &LabCaps) -> Result<LabReport, LabError> {
    let start = Instant::now();
    if !is_connected(g) {
        return Err(LabError::Disconnected);
    }
    if !g.is_unit_weight() {
        return Err(LabError::NotUnitWeight);
    }
    let claim = if shortest_only { Claim::PathLemmaShortest } else { Claim::PathLemma };
    let contractions = valid_weak_by_size(g, &Tolerance::unit(), caps)?;
    let paths =
        if shortest_only { shortest_paths(g, 3) } else { simple_paths(g, 3, caps.path_len.unwrap_or(diameter(g) + 2)) };

    let mut report = LabReport::new(claim, Instance::of_graph(g), Verdict::Vacuous);
    report.stats.truncated = paths.truncated;
    let mut matched = 0u64;
    'scan: for c in &contractions {
        report.stats.enumerated += 1;
        let in_c = c.membership(g.edge_count());
        for p in &paths.paths {
            match match_path(p, &in_c) {
                PathMatch::NotApplicable => {}
                PathMatch::Consistent => matched += 1,
                PathMatch::Violated { disjoint, missing } => {
                    report.verdict = Verdict::Counterexample;
                    report.witness = Some(LabWitness::Path {
                        contraction: c.clone(),
                        path: p.vertices.clone(),
                        disjoint_edges: disjoint,
                        missing_edge: missing,
                    });
                    break 'scan;
                }
            }
        }
    }
    if report.verdict == Verdict::Vacuous && matched > 0 {
        report.verdict = Verdict::Holds;
    }
    report.details = Some(json!({
        "valid_contractions": contractions.len(),
        "paths": paths.paths.len(),
        "matched_pairs": matched,
    }));
    report.stats.elapsed_ms = millis(start);
    Ok(report)
}

fn unit_gadget(g: &BipartiteGraph) -> Result<GadgetGraph, LabError> {
    Ok(build_gadget(g, &Rational::one())?)
}

/// Every valid weak (1,1)-contraction of the unit gadget with more than one
/// edge must be exactly the edge set of a biclique of `G`.
pub fn check_biclique_lemma(g: &BipartiteGraph, caps: &LabCaps) -> Result<LabReport, LabError> {
    let start = Instant::now();
    let bg = unit_gadget(g)?;
    let contractions = valid_weak_by_size(bg.graph(), &bg.tolerance(), caps)?;
    let mut report = LabReport::new(Claim::BicliqueLemma, Instance::of_bipartite(g), Verdict::Vacuous);
    let mut largest = 0;
    for c in &contractions {
        report.stats.enumerated += 1;
        largest = largest.max(c.len());
        if c.len() <= 1 {
            continue;
        }
        let shape = shape_of(&bg, c);
        if shape.biclique().is_some() {
            report.verdict = Verdict::Holds;
        } else {
            report.verdict = Verdict::Counterexample;
            report.witness = Some(LabWitness::Shape { contraction: c.clone(), shape });
            break;
        }
    }
    report.details = Some(json!({
        "gadget_edges": bg.graph().edge_count(),
        "valid_contractions": contractions.len(),
        "largest_valid": largest,
    }));
    report.stats.elapsed_ms = millis(start);
    Ok(report)
}

/// Soundness and completeness reports for the gadget reduction on `g`.
///
/// Soundness: when the biclique lemma holds (or is vacuous) on `g`, the
/// gadget's weak optimum is at most `max(1, MEB(B_G))`; otherwise the
/// report is vacuous. Completeness: the verifier's verdict on contracting
/// the maximum edge biclique the exact solver returns for `B_G`. That
/// witness is always attached so the verdict can be re-checked.
pub fn check_theorem6(g: &BipartiteGraph, caps: &LabCaps) -> Result<(LabReport, LabReport), LabError> {
    let start = Instant::now();
    let bg = unit_gadget(g)?;
    let config = caps.solver_config();
    let meb_core = max_edge_biclique_exact(g, &config)?;
    let meb_gadget = max_edge_biclique_exact(bg.bipartite(), &config)?;
    let optimum = max_weak_contraction_exact(bg.graph(), &bg.tolerance(), &config)?;
    let lemma = check_biclique_lemma(g, caps)?;

    let bound = meb_gadget.objective.max(1);
    let instance = Instance::of_bipartite(g);
    let mut sound = LabReport::new(Claim::Thm6Soundness, instance.clone(), Verdict::Vacuous);
    if lemma.verdict != Verdict::Counterexample {
        if optimum.objective <= bound {
            sound.verdict = Verdict::Holds;
        } else {
            sound.verdict = Verdict::Counterexample;
            sound.witness = Some(LabWitness::Bound {
                contraction: optimum.witness.contraction().expect("contraction witness").clone(),
                bound,
            });
        }
    }
    sound.details = Some(json!({
        "optimum": optimum.objective,
        "meb_gadget": meb_gadget.objective,
        "biclique_lemma": lemma.verdict,
    }));
    sound.stats.enumerated = optimum.explored + lemma.stats.enumerated;

    let gadget_biclique = meb_gadget.witness.biclique().expect("biclique witness").clone();
    let core_biclique = meb_core.witness.biclique().expect("biclique witness").clone();
    let mut complete = LabReport::new(Claim::Thm6Completeness, instance, Verdict::Vacuous);
    if !gadget_biclique.is_empty() {
        let verdict = biclique_to_contraction(&bg, &gadget_biclique)?;
        complete.verdict = if verdict.valid { Verdict::Holds } else { Verdict::Counterexample };
        complete.witness = Some(LabWitness::BicliqueContraction {
            biclique: gadget_biclique,
            contraction: verdict.contraction,
            valid: verdict.valid,
            violation: verdict.violation,
        });
    }
    // the biclique of G itself, which is what the reduction's argument contracts
    let core_verdict =
        if core_biclique.is_empty() { None } else { Some(biclique_to_contraction(&bg, &core_biclique)?) };
    complete.details = Some(json!({
        "meb_core": meb_core.objective,
        "meb_gadget": meb_gadget.objective,
        "core_biclique": core_biclique,
        "core_contraction_valid": core_verdict.as_ref().map(|v| v.valid),
        "core_violation": core_verdict.and_then(|v| v.violation),
    }));
    complete.stats.enumerated = meb_core.explored + meb_gadget.explored;
    let elapsed = millis(start);
    sound.stats.elapsed_ms = elapsed;
    complete.stats.elapsed_ms = elapsed;
    Ok((sound, complete))
}

/// Samples `trials` edge subsets of the gadget (each edge kept with
/// probability 1/2) and compares the weight-`beta` gadget at `(1, beta)`
/// with the unit gadget at `(1, 1)`.
pub fn check_corollary_scaling(
    g: &BipartiteGraph,
    beta: &Rational,
    trials: usize,
    seed: u64,
) -> Result<LabReport, LabError> {
    let start = Instant::now();
    if !beta.is_positive() {
        return Err(LabError::NonPositiveBeta);
    }
    let unit = unit_gadget(g)?;
    let scaled = build_gadget(g, beta)?;
    let unit_check = ContractionChecker::new(unit.graph(), &unit.tolerance())?;
    let scaled_check = ContractionChecker::new(scaled.graph(), &scaled.tolerance())?;
    let instance =
        Instance::of_bipartite(g).with_param("beta", beta).with_param("trials", trials).with_param("sample_seed", seed);
    let mut report = LabReport::new(Claim::CorollaryScaling, instance, Verdict::Vacuous);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = unit.graph().edge_count();
    for _ in 0..trials {
        let c = ContractionSet::new((0..m).filter(|_| rng.gen::<bool>()));
        report.stats.enumerated += 1;
        let unit_valid = unit_check.is_valid(&c, Mode::Weak);
        let scaled_valid = scaled_check.is_valid(&c, Mode::Weak);
        if unit_valid != scaled_valid {
            report.verdict = Verdict::Counterexample;
            report.witness = Some(LabWitness::Scaling { contraction: c, scaled_valid, unit_valid });
            break;
        }
        report.verdict = Verdict::Holds;
    }
    report.stats.elapsed_ms = millis(start);
    Ok(report)
}

/// Maximal bicliques `S x N(S)` with `S = N(N(S))`, `S` a nonempty subset of
/// the left side, in subset order.
fn maximal_bicliques(g: &BipartiteGraph) -> Vec<Biclique> {
    let l = g.left_count();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << l) {
        let s: Vec<usize> = (0..l).filter(|&i| mask >> i & 1 == 1).collect();
        let t: Vec<usize> = (0..g.right_count()).filter(|&r| s.iter().all(|&x| g.has_edge(x, r))).collect();
        if t.is_empty() {
            continue;
        }
        let closure: Vec<usize> = (0..l).filter(|&x| t.iter().all(|&r| g.has_edge(x, r))).collect();
        if closure == s {
            out.push(Biclique::new(s, t));
        }
    }
    out
}

/// Tensor-square constructions on `g`: every maximal biclique lifts to a
/// complete biclique, the tensor's maximum balanced biclique projects to a
/// complete factor biclique, and `MBB(G x G) >= MEB(G)`.
pub fn check_lemma2(g: &BipartiteGraph, caps: &LabCaps) -> Result<LabReport, LabError> {
    let start = Instant::now();
    let config = caps.solver_config();
    let tensor = build_tensor_square(g);
    // fail on oversized tensors before doing any work
    if tensor.part_size() > caps.side_cap {
        return Err(
            crate::solvers::SolveError::SideCapExceeded { found: tensor.part_size(), cap: caps.side_cap }.into()
        );
    }
    if g.left_count() > 63 {
        return Err(crate::solvers::SolveError::SideCapExceeded { found: g.left_count(), cap: 63 }.into());
    }
    let mut report = LabReport::new(Claim::Lemma2Lift, Instance::of_bipartite(g), Verdict::Vacuous);
    let maximal = maximal_bicliques(g);
    report.stats.enumerated = maximal.len() as u64;
    let mut meb = 0;
    for b in &maximal {
        meb = meb.max(b.edge_count());
        if lift_biclique(&tensor, b).is_err() {
            report.verdict = Verdict::Counterexample;
            report.witness = Some(LabWitness::Tensor { stage: TensorStage::Lift, biclique: b.clone() });
            break;
        }
        report.verdict = Verdict::Holds;
    }

    let mbb = max_balanced_biclique_exact(tensor.graph(), &config)?;
    let t = mbb.objective;
    let tensor_biclique = mbb.witness.biclique().expect("biclique witness").clone();
    let mut projected_edges = None;
    if report.verdict != Verdict::Counterexample && !tensor_biclique.is_empty() {
        match project_biclique(&tensor, &tensor_biclique) {
            Ok(p) => projected_edges = Some(p.edge_count()),
            Err(_) => {
                report.verdict = Verdict::Counterexample;
                report.witness =
                    Some(LabWitness::Tensor { stage: TensorStage::Project, biclique: tensor_biclique.clone() });
            }
        }
    }
    if report.verdict != Verdict::Counterexample && (t as usize) < meb {
        report.verdict = Verdict::Counterexample;
        report.witness = Some(LabWitness::Tensor { stage: TensorStage::Bound, biclique: tensor_biclique });
    }
    report.details = Some(json!({
        "maximal_bicliques": maximal.len(),
        "meb": meb,
        "tensor_mbb": t,
        "t_squared": t * t,
        "projected_edges": projected_edges,
    }));
    report.stats.elapsed_ms = millis(start);
    Ok(report)
}

fn bipartite_of(report: &LabReport) -> Result<BipartiteGraph, LabError> {
    match report.instance.graph()? {
        ParsedGraph::Bipartite(b) => Ok(b),
        ParsedGraph::General(_) => Err(LabError::NotBipartite(report.claim)),
    }
}

/// Re-checks a report's witness from scratch with the plain verifiers.
///
/// Returns `Ok(true)` when the witness supports the verdict, or when there
/// is nothing to re-check (no witness and no counterexample).
/// Counterexamples without a witness never re-verify.
pub fn reverify(report: &LabReport) -> Result<bool, LabError> {
    let Some(witness) = &report.witness else {
        return Ok(report.verdict != Verdict::Counterexample);
    };
    let unit = Tolerance::unit();
    let counter = report.verdict == Verdict::Counterexample;
    match witness {
        LabWitness::Path { contraction, path, disjoint_edges, missing_edge } => {
            let g = report.instance.graph()?;
            let g = g.graph();
            if !is_weak_contraction(g, contraction, &unit)? {
                return Ok(false);
            }
            let mut edges = Vec::new();
            for w in path.windows(2) {
                match g.edge_between(w[0], w[1]) {
                    Some(id) => edges.push(id),
                    None => return Ok(false),
                }
            }
            let mut seen = path.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != path.len() {
                return Ok(false);
            }
            if report.claim == Claim::PathLemmaShortest {
                let hops = g.bfs_levels(path[0])[*path.last().unwrap()];
                if hops != edges.len() {
                    return Ok(false);
                }
            }
            let [a, b] = *disjoint_edges;
            let (ea, eb) = (g.edge(a), g.edge(b));
            let disjoint = ea.u != eb.u && ea.u != eb.v && ea.v != eb.u && ea.v != eb.v;
            Ok(counter
                && disjoint
                && [a, b, *missing_edge].iter().all(|id| edges.contains(id))
                && contraction.contains(a)
                && contraction.contains(b)
                && !contraction.contains(*missing_edge))
        }
        LabWitness::Shape { contraction, shape } => {
            let bg = unit_gadget(&bipartite_of(report)?)?;
            Ok(counter
                && contraction.len() > 1
                && is_weak_contraction(bg.graph(), contraction, &unit)?
                && shape.biclique().is_none()
                && shape_of(&bg, contraction) == *shape)
        }
        LabWitness::Bound { contraction, bound } => {
            let bg = unit_gadget(&bipartite_of(report)?)?;
            Ok(counter && is_weak_contraction(bg.graph(), contraction, &unit)? && contraction.len() as u64 > *bound)
        }
        LabWitness::BicliqueContraction { biclique, contraction, valid, .. } => {
            let bg = unit_gadget(&bipartite_of(report)?)?;
            if !biclique.is_complete_in(bg.bipartite()) || bg.biclique_edges(biclique).as_ref() != Some(contraction) {
                return Ok(false);
            }
            let actual = is_weak_contraction(bg.graph(), contraction, &unit)?;
            let expected = if actual { Verdict::Holds } else { Verdict::Counterexample };
            Ok(actual == *valid && report.verdict == expected)
        }
        LabWitness::Scaling { contraction, scaled_valid, unit_valid } => {
            let b = bipartite_of(report)?;
            let beta = report
                .instance
                .param("beta")
                .and_then(crate::graph::parse_rational)
                .ok_or_else(|| LabError::BadInstance(report.instance.params.clone()))?;
            let unit_gadget = unit_gadget(&b)?;
            let scaled = build_gadget(&b, &beta)?;
            let u = violation_witness(unit_gadget.graph(), contraction, &unit, Mode::Weak)?.is_none();
            let s = violation_witness(scaled.graph(), contraction, &scaled.tolerance(), Mode::Weak)?.is_none();
            Ok(counter && u == *unit_valid && s == *scaled_valid && u != s)
        }
        LabWitness::Tensor { stage, biclique } => {
            let b = bipartite_of(report)?;
            let tensor = build_tensor_square(&b);
            let failed = match stage {
                TensorStage::Lift => biclique.is_complete_in(&b) && lift_biclique(&tensor, biclique).is_err(),
                TensorStage::Project => {
                    biclique.is_complete_in(tensor.graph()) && project_biclique(&tensor, biclique).is_err()
                }
                TensorStage::Bound => {
                    let meb = max_edge_biclique_exact(&b, &Default::default())?.objective;
                    let mbb = max_balanced_biclique_exact(tensor.graph(), &Default::default())?.objective;
                    mbb < meb
                }
            };
            Ok(counter && failed)
        }
    }
}
