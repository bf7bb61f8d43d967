use std::time::Instant;

use super::{max_contraction_exact, max_weak_contraction_exact, SolveError, SolveResult, SolverConfig, Witness};
use crate::contraction::{ContractionSet, Mode, Tolerance};
use crate::graph::Graph;

/// Exact maximum (weak) contraction of a possibly disconnected graph, solving
/// each connected component on its own.
///
/// Strong mode: the component optima simply add up. Weak mode: a fully
/// contracted component merges all its pairs, so it is always admissible;
/// only `C != E` couples the components. The optimum therefore contracts
/// every component completely except one, which gets its own weak optimum,
/// chosen to lose as few edges as possible (ties go to the lexicographically
/// smaller witness).
pub fn max_contraction_by_components(
    g: &Graph,
    t: &Tolerance,
    mode: Mode,
    config: &SolverConfig,
) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    let parts = g.components();
    let to_global = |sub: &Graph, map: &[usize], c: &ContractionSet| -> Vec<usize> {
        c.ids()
            .iter()
            .map(|&id| {
                let e = sub.edge(id);
                g.edge_between(map[e.u], map[e.v]).expect("component edge exists in the graph")
            })
            .collect()
    };
    let mut explored = 0;
    match mode {
        Mode::Strong => {
            let mut ids = Vec::new();
            for (sub, map) in &parts {
                let res = max_contraction_exact(sub, t, config)?;
                explored += res.explored;
                ids.extend(to_global(sub, map, res.witness.contraction().expect("contraction witness")));
            }
            let witness = ContractionSet::new(ids);
            Ok(SolveResult {
                objective: witness.len() as u64,
                witness: Witness::Contraction(witness),
                explored,
                elapsed: start.elapsed(),
            })
        }
        Mode::Weak => {
            let all: Vec<Vec<usize>> =
                parts.iter().map(|(sub, map)| to_global(sub, map, &ContractionSet::all(sub))).collect();
            let mut best: Option<ContractionSet> = None;
            for (j, (sub, map)) in parts.iter().enumerate() {
                if sub.edge_count() == 0 {
                    continue;
                }
                let res = match max_weak_contraction_exact(sub, t, config) {
                    Ok(res) => res,
                    Err(SolveError::Infeasible) => continue,
                    Err(e) => return Err(e),
                };
                explored += res.explored;
                let mut ids = to_global(sub, map, res.witness.contraction().expect("contraction witness"));
                for (i, full) in all.iter().enumerate() {
                    if i != j {
                        ids.extend(full);
                    }
                }
                let candidate = ContractionSet::new(ids);
                let better = match &best {
                    None => true,
                    Some(b) => candidate.len() > b.len() || (candidate.len() == b.len() && candidate < *b),
                };
                if better {
                    best = Some(candidate);
                }
            }
            let witness = best.ok_or(SolveError::Infeasible)?;
            Ok(SolveResult {
                objective: witness.len() as u64,
                witness: Witness::Contraction(witness),
                explored,
                elapsed: start.elapsed(),
            })
        }
    }
}
