use std::cell::RefCell;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{SolveError, SolveResult, SolverConfig, Witness};
use crate::contraction::{ContractionChecker, ContractionSet, Mode, Tolerance};
use crate::graph::Graph;

thread_local! {
    static SCRATCH: RefCell<Vec<u64>> = const { RefCell::new(Vec::new()) };
}

fn check_cap(g: &Graph, config: &SolverConfig) -> Result<(), SolveError> {
    let m = g.edge_count();
    if m > config.edge_cap || m > 63 {
        return Err(SolveError::EdgeCapExceeded { found: m, cap: config.edge_cap.min(63) });
    }
    Ok(())
}

/// Maximum (alpha, beta)-contraction.
///
/// Validity is downward closed here: contracting more edges never increases
/// any `d_C`, and no pair is exempt, so every subset of a valid set is valid.
/// The search is a depth-first walk over sets in lexicographic order that
/// only extends valid sets and cuts subtrees that cannot beat the incumbent.
pub fn max_contraction_exact(g: &Graph, t: &Tolerance, config: &SolverConfig) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    check_cap(g, config)?;
    let checker = ContractionChecker::new(g, t)?;
    let mut search =
        StrongSearch { checker: &checker, m: g.edge_count(), best: 0, best_len: 0, explored: 1, scratch: Vec::new() };
    if !checker.is_valid_mask(0, Mode::Strong, &mut search.scratch) {
        return Err(SolveError::Infeasible);
    }
    search.descend(0, 0, 0);
    Ok(SolveResult {
        objective: search.best_len as u64,
        witness: Witness::Contraction(ContractionSet::from_mask(search.best)),
        explored: search.explored,
        elapsed: start.elapsed(),
    })
}

struct StrongSearch<'a, 'g> {
    checker: &'a ContractionChecker<'g>,
    m: usize,
    best: u64,
    best_len: usize,
    explored: u64,
    scratch: Vec<u64>,
}

impl StrongSearch<'_, '_> {
    fn descend(&mut self, mask: u64, len: usize, next: usize) {
        if len > self.best_len {
            self.best = mask;
            self.best_len = len;
        }
        for i in next..self.m {
            if len + (self.m - i) <= self.best_len {
                break;
            }
            let child = mask | 1 << i;
            self.explored += 1;
            if self.checker.is_valid_mask(child, Mode::Strong, &mut self.scratch) {
                self.descend(child, len + 1, i + 1);
            }
        }
    }
}

/// All `k`-subsets of `0..m` as masks, in lexicographic order of their sorted
/// element sequences.
fn combinations(m: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    if k > m {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().fold(0u64, |acc, &i| acc | 1 << i));
        let Some(pos) = (0..k).rev().find(|&p| idx[p] < m - k + p) else {
            return out;
        };
        idx[pos] += 1;
        for p in pos + 1..k {
            idx[p] = idx[p - 1] + 1;
        }
    }
}

/// Maximum weak (alpha, beta)-contraction.
///
/// Weak validity is not monotone (a superset can merge the very pair that
/// made a subset invalid), so nothing is pruned: sizes are scanned from
/// `|E| - 1` downwards and the first size with a valid set wins. Within a
/// size, candidates are checked in parallel and the lexicographically first
/// valid one is kept.
pub fn max_weak_contraction_exact(g: &Graph, t: &Tolerance, config: &SolverConfig) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    check_cap(g, config)?;
    let checker = ContractionChecker::new(g, t)?;
    let m = g.edge_count();
    config.install(|| {
        let mut explored = 0u64;
        for k in (0..m).rev() {
            let level = combinations(m, k);
            let hit = level
                .par_iter()
                .position_first(|&mask| SCRATCH.with(|s| checker.is_valid_mask(mask, Mode::Weak, &mut s.borrow_mut())));
            match hit {
                Some(pos) => {
                    explored += pos as u64 + 1;
                    return Ok(SolveResult {
                        objective: k as u64,
                        witness: Witness::Contraction(ContractionSet::from_mask(level[pos])),
                        explored,
                        elapsed: start.elapsed(),
                    });
                }
                None => explored += level.len() as u64,
            }
        }
        Err(SolveError::Infeasible)
    })?
}

/// Lazy stream of every valid weak contraction, in lexicographic order.
pub struct WeakContractions<'g> {
    checker: ContractionChecker<'g>,
    m: usize,
    current: Option<Vec<usize>>,
    started: bool,
    scratch: Vec<u64>,
    examined: u64,
}

impl WeakContractions<'_> {
    /// Proper subsets examined so far.
    pub fn examined(&self) -> u64 {
        self.examined
    }

    /// Next subset in lexicographic (preorder) order.
    fn advance(&mut self) -> Option<Vec<usize>> {
        let m = self.m;
        if !self.started {
            self.started = true;
            self.current = Some(Vec::new());
            return self.current.clone();
        }
        let mut s = self.current.take()?;
        match s.last().copied() {
            None if m > 0 => s.push(0),
            None => return None,
            Some(x) if x + 1 < m => s.push(x + 1),
            Some(_) => {
                s.pop();
                let y = s.pop()?;
                s.push(y + 1);
            }
        }
        self.current = Some(s);
        self.current.clone()
    }
}

impl Iterator for WeakContractions<'_> {
    type Item = ContractionSet;

    fn next(&mut self) -> Option<ContractionSet> {
        loop {
            let s = self.advance()?;
            if s.len() == self.m {
                continue;
            }
            self.examined += 1;
            let mask = s.iter().fold(0u64, |acc, &i| acc | 1 << i);
            if self.checker.is_valid_mask(mask, Mode::Weak, &mut self.scratch) {
                return Some(ContractionSet::new(s));
            }
        }
    }
}

pub fn enumerate_valid_weak_contractions<'g>(
    g: &'g Graph,
    t: &Tolerance,
    config: &SolverConfig,
) -> Result<WeakContractions<'g>, SolveError> {
    check_cap(g, config)?;
    Ok(WeakContractions {
        checker: ContractionChecker::new(g, t)?,
        m: g.edge_count(),
        current: None,
        started: false,
        scratch: Vec::new(),
        examined: 0,
    })
}

/// Tries edges in a seeded random order, keeping each one whose addition
/// leaves a valid weak contraction. No size cap applies.
pub fn greedy_weak_contraction(g: &Graph, t: &Tolerance, seed: u64) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    let checker = ContractionChecker::new(g, t)?;
    let m = g.edge_count();
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));

    let mut in_c = vec![false; m];
    let mut size = 0;
    let mut scratch = Vec::new();
    let mut explored = 0;
    for e in order {
        if size + 1 == m {
            break;
        }
        in_c[e] = true;
        explored += 1;
        if checker.first_violating_pair(|id| in_c[id], Mode::Weak, &mut scratch).is_none() {
            size += 1;
        } else {
            in_c[e] = false;
        }
    }
    let witness = ContractionSet::new((0..m).filter(|&i| in_c[i]));
    if !checker.is_valid(&witness, Mode::Weak) {
        return Err(SolveError::Infeasible);
    }
    Ok(SolveResult {
        objective: witness.len() as u64,
        witness: Witness::Contraction(witness),
        explored,
        elapsed: start.elapsed(),
    })
}
