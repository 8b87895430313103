//! Exact minimum monopolies and dynamos by cardinality-ordered enumeration.
//!
//! Candidate sets of size `k` are visited in lexicographic order of their
//! sorted id tuples, `k` ascending, so the first verifying set is both a
//! minimum and the lexicographically smallest minimum. Parallel runs split
//! each level by first element and only report once the whole level is done.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{Spreader, VertexSet};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::thresholds::ThresholdAssignment;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Monopoly,
    Dynamo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveStatus {
    Solved,
    Inconclusive,
}

/// Caps on a single solve. `threads <= 1` runs sequentially.
#[derive(Debug, Clone, Copy, Default)]
pub struct Budget {
    pub max_candidates: Option<u64>,
    pub max_time: Option<Duration>,
    pub threads: usize,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub objective: Objective,
    pub status: SolveStatus,
    /// Every size below this is proven infeasible.
    pub lower_bound: usize,
    /// Size of `witness`.
    pub upper_bound: usize,
    /// A verified set; the minimum when solved, the whole vertex set otherwise.
    pub witness: VertexSet,
    pub explored: u64,
    pub elapsed: Duration,
}

impl SolveResult {
    pub fn optimum(&self) -> Option<usize> {
        (self.status == SolveStatus::Solved).then_some(self.upper_bound)
    }

    pub fn is_solved(&self) -> bool {
        self.status == SolveStatus::Solved
    }
}

pub fn min_monopoly(g: &Graph, tau: &ThresholdAssignment, budget: Budget) -> Result<SolveResult> {
    search(g, tau, Objective::Monopoly, 0, budget)
}

pub fn min_dynamo(g: &Graph, tau: &ThresholdAssignment, budget: Budget) -> Result<SolveResult> {
    search(g, tau, Objective::Dynamo, 0, budget)
}

/// [`min_dynamo`] starting the enumeration at size `lb`. The caller must
/// guarantee `lb` does not exceed the true optimum; otherwise the returned
/// value is merely the smallest dynamo of size at least `lb`.
pub fn min_dynamo_lb_pruned(
    g: &Graph,
    tau: &ThresholdAssignment,
    lb: usize,
    budget: Budget,
) -> Result<SolveResult> {
    search(g, tau, Objective::Dynamo, lb, budget)
}

/// [`min_monopoly`] starting at size `lb`, under the same contract as
/// [`min_dynamo_lb_pruned`].
pub fn min_monopoly_lb_pruned(
    g: &Graph,
    tau: &ThresholdAssignment,
    lb: usize,
    budget: Budget,
) -> Result<SolveResult> {
    search(g, tau, Objective::Monopoly, lb, budget)
}

/// Every minimum dynamo, in lexicographic order.
pub fn all_min_dynamos(g: &Graph, tau: &ThresholdAssignment, budget: Budget) -> Result<Vec<VertexSet>> {
    let best = min_dynamo(g, tau, budget)?;
    let k = best
        .optimum()
        .ok_or_else(|| Error::invalid("budget exhausted before the optimum was found"))?;
    let mut checker = Checker::new(g, tau, Objective::Dynamo);
    let mut found = Vec::new();
    for_each_subset(g.vertex_count(), k, |subset| {
        if checker.accepts(subset) {
            found.push(VertexSet::new(subset.to_vec()));
        }
        true
    });
    Ok(found)
}

fn search(
    g: &Graph,
    tau: &ThresholdAssignment,
    objective: Objective,
    lb: usize,
    budget: Budget,
) -> Result<SolveResult> {
    if tau.len() != g.vertex_count() {
        return Err(Error::invalid(format!(
            "{} thresholds for a graph of {} vertices",
            tau.len(),
            g.vertex_count()
        )));
    }
    let n = g.vertex_count();
    if lb > n {
        return Err(Error::invalid(format!("lower bound {lb} exceeds {n} vertices")));
    }
    let start = Instant::now();
    let state = SearchState {
        explored: AtomicU64::new(0),
        exhausted: AtomicBool::new(false),
        start,
        budget,
    };
    let first = if n == 0 { 0 } else { lb.max(1) };

    for k in first..=n {
        let hit = if budget.threads > 1 && k > 0 {
            level_parallel(g, tau, objective, k, &state)
        } else {
            level_sequential(g, tau, objective, k, &state)
        };
        if let Some(witness) = hit {
            return Ok(SolveResult {
                objective,
                status: SolveStatus::Solved,
                lower_bound: k,
                upper_bound: k,
                witness: VertexSet::new(witness),
                explored: state.explored.load(Ordering::Relaxed),
                elapsed: start.elapsed(),
            });
        }
        if state.exhausted.load(Ordering::Relaxed) {
            return Ok(SolveResult {
                objective,
                status: SolveStatus::Inconclusive,
                lower_bound: k,
                upper_bound: n,
                witness: VertexSet::full(n),
                explored: state.explored.load(Ordering::Relaxed),
                elapsed: start.elapsed(),
            });
        }
    }
    unreachable!("the full vertex set is always a monopoly and a dynamo")
}

struct SearchState {
    explored: AtomicU64,
    exhausted: AtomicBool,
    start: Instant,
    budget: Budget,
}

impl SearchState {
    /// Counts one candidate; false once the budget is spent.
    fn tick(&self) -> bool {
        if self.exhausted.load(Ordering::Relaxed) {
            return false;
        }
        let seen = self.explored.fetch_add(1, Ordering::Relaxed) + 1;
        let over_count = self.budget.max_candidates.is_some_and(|cap| seen > cap);
        let over_time = seen % 1024 == 0
            && self
                .budget
                .max_time
                .is_some_and(|cap| self.start.elapsed() > cap);
        if over_count || over_time {
            self.exhausted.store(true, Ordering::Relaxed);
            // the candidate that tripped the cap was not examined
            self.explored.fetch_sub(1, Ordering::Relaxed);
            return false;
        }
        true
    }
}

fn level_sequential(
    g: &Graph,
    tau: &ThresholdAssignment,
    objective: Objective,
    k: usize,
    state: &SearchState,
) -> Option<Vec<usize>> {
    let mut checker = Checker::new(g, tau, objective);
    let mut hit = None;
    for_each_subset(g.vertex_count(), k, |subset| {
        if !state.tick() {
            return false;
        }
        if checker.accepts(subset) {
            hit = Some(subset.to_vec());
            return false;
        }
        true
    });
    hit
}

fn level_parallel(
    g: &Graph,
    tau: &ThresholdAssignment,
    objective: Objective,
    k: usize,
    state: &SearchState,
) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(state.budget.threads)
        .build()
        .ok()?;
    let hits: Vec<Option<Vec<usize>>> = pool.install(|| {
        (0..=n - k)
            .into_par_iter()
            .map(|head| {
                let mut checker = Checker::new(g, tau, objective);
                let mut hit = None;
                for_each_subset_with_head(n, k, head, |subset| {
                    if !state.tick() {
                        return false;
                    }
                    if checker.accepts(subset) {
                        hit = Some(subset.to_vec());
                        return false;
                    }
                    true
                });
                hit
            })
            .collect()
    });
    // partitions are ordered by head, so the first hit is the lexicographic minimum
    hits.into_iter().flatten().next()
}

/// Calls `visit` on each `k`-subset of `0..n` in lexicographic order until it
/// returns false.
pub(crate) fn for_each_subset(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if k == 0 {
        visit(&[]);
        return;
    }
    for head in 0..=n.saturating_sub(k) {
        if k > n {
            return;
        }
        let mut go_on = true;
        for_each_subset_with_head(n, k, head, |s| {
            go_on = visit(s);
            go_on
        });
        if !go_on {
            return;
        }
    }
}

fn for_each_subset_with_head(n: usize, k: usize, head: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    let mut idx: Vec<usize> = (head..head + k).collect();
    if idx.last().is_some_and(|&last| last >= n) {
        return;
    }
    loop {
        if !visit(&idx) {
            return;
        }
        // advance positions 1..k, leaving the head fixed
        let mut i = k;
        loop {
            if i <= 1 {
                return;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

struct Checker<'a> {
    g: &'a Graph,
    tau: &'a ThresholdAssignment,
    objective: Objective,
    // monopoly: v with tau(v) >= deg(v) forces v or all of N(v) into the set
    // dynamo: v with tau(v) > deg(v) can only be seeded
    forced: Vec<usize>,
    mask: Vec<bool>,
    spreader: Spreader<'a>,
}

impl<'a> Checker<'a> {
    fn new(g: &'a Graph, tau: &'a ThresholdAssignment, objective: Objective) -> Self {
        let forced = (0..g.vertex_count())
            .filter(|&v| {
                let t = tau.get(v) as usize;
                match objective {
                    Objective::Monopoly => t >= g.degree(v),
                    Objective::Dynamo => t > g.degree(v),
                }
            })
            .collect();
        Checker {
            g,
            tau,
            objective,
            forced,
            mask: vec![false; g.vertex_count()],
            spreader: Spreader::new(g, tau),
        }
    }

    fn accepts(&mut self, subset: &[usize]) -> bool {
        match self.objective {
            Objective::Dynamo => {
                if !self.forced.iter().all(|v| subset.binary_search(v).is_ok()) {
                    return false;
                }
                self.spreader.spreads_fully(subset)
            }
            Objective::Monopoly => {
                for &v in subset {
                    self.mask[v] = true;
                }
                let ok = self.monopoly_holds();
                for &v in subset {
                    self.mask[v] = false;
                }
                ok
            }
        }
    }

    fn monopoly_holds(&self) -> bool {
        let outside_ok = |v: usize| {
            self.mask[v]
                || self.g.neighbors(v).iter().filter(|&&w| self.mask[w]).count() >= self.tau.get(v) as usize
        };
        self.forced.iter().all(|&v| outside_ok(v)) && (0..self.g.vertex_count()).all(outside_ok)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{is_dynamic_monopoly, is_static_monopoly};
    use crate::graph::{cartesian_product, complete, cycle};

    fn product(g: Graph, h: Graph) -> Graph {
        cartesian_product(&g, &h).unwrap()
    }

    #[test]
    fn subsets_in_lexicographic_order() {
        let mut seen = Vec::new();
        for_each_subset(5, 3, |s| {
            seen.push(s.to_vec());
            true
        });
        assert_eq!(seen.len(), 10);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(seen[0], vec![0, 1, 2]);
        assert_eq!(seen[9], vec![2, 3, 4]);

        let mut empty = 0;
        for_each_subset(3, 0, |_| {
            empty += 1;
            true
        });
        assert_eq!(empty, 1);
        let mut none = 0;
        for_each_subset(2, 3, |_| {
            none += 1;
            true
        });
        assert_eq!(none, 0);
    }

    #[test]
    fn single_vertex_monopoly_of_triangle() {
        let k3 = complete(3).unwrap();
        let tau = ThresholdAssignment::constant(&k3, 1).unwrap();
        // every singleton dominates the other two vertices
        for v in 0..3 {
            assert!(is_static_monopoly(&k3, &tau, &VertexSet::new(vec![v])).unwrap().holds);
        }
        let r = min_monopoly(&k3, &tau, Budget::unlimited()).unwrap();
        assert_eq!(r.optimum(), Some(1));
        assert_eq!(r.witness.members(), &[0]);
    }

    #[test]
    fn small_product_values() {
        let c3c3 = product(cycle(3).unwrap(), cycle(3).unwrap());
        let tau = ThresholdAssignment::constant(&c3c3, 2).unwrap();
        assert_eq!(min_monopoly(&c3c3, &tau, Budget::unlimited()).unwrap().optimum(), Some(3));

        let k2k2 = product(complete(2).unwrap(), complete(2).unwrap());
        let tau = ThresholdAssignment::constant(&k2k2, 2).unwrap();
        assert_eq!(min_monopoly(&k2k2, &tau, Budget::unlimited()).unwrap().optimum(), Some(2));

        let c4k4 = product(cycle(4).unwrap(), complete(4).unwrap());
        let tau = ThresholdAssignment::constant(&c4k4, 2).unwrap();
        assert_eq!(min_dynamo(&c4k4, &tau, Budget::unlimited()).unwrap().optimum(), Some(3));

        let c3k3 = product(cycle(3).unwrap(), complete(3).unwrap());
        let tau = ThresholdAssignment::constant(&c3k3, 3).unwrap();
        assert_eq!(min_dynamo(&c3k3, &tau, Budget::unlimited()).unwrap().optimum(), Some(4));

        let k3k3 = product(complete(3).unwrap(), complete(3).unwrap());
        let tau = ThresholdAssignment::constant(&k3k3, 2).unwrap();
        assert_eq!(min_dynamo(&k3k3, &tau, Budget::unlimited()).unwrap().optimum(), Some(2));
    }

    #[test]
    fn pruned_start_skips_smaller_levels() {
        let k3k3 = product(complete(3).unwrap(), complete(3).unwrap());
        let tau = ThresholdAssignment::constant(&k3k3, 4).unwrap();
        let full = min_dynamo(&k3k3, &tau, Budget::unlimited()).unwrap();
        let pruned = min_dynamo_lb_pruned(&k3k3, &tau, 6, Budget::unlimited()).unwrap();
        assert_eq!(full.optimum(), Some(6));
        assert_eq!(pruned.optimum(), Some(6));
        assert_eq!(pruned.witness, full.witness);
        assert!(pruned.explored < full.explored);
        // only size-6 subsets were visited
        assert!(pruned.explored <= 84);

        let one = min_dynamo_lb_pruned(&k3k3, &tau, 1, Budget::unlimited()).unwrap();
        assert_eq!(one, SolveResult { elapsed: one.elapsed, ..full.clone() });
        assert_eq!(one.explored, full.explored);
        assert!(min_dynamo_lb_pruned(&k3k3, &tau, 10, Budget::unlimited()).is_err());
    }

    #[test]
    fn budget_exhaustion_is_inconclusive() {
        let c3k3 = product(cycle(3).unwrap(), complete(3).unwrap());
        let tau = ThresholdAssignment::constant(&c3k3, 3).unwrap();
        let budget = Budget {
            max_candidates: Some(20),
            ..Budget::default()
        };
        let r = min_dynamo(&c3k3, &tau, budget).unwrap();
        assert_eq!(r.status, SolveStatus::Inconclusive);
        assert_eq!(r.optimum(), None);
        assert_eq!(r.explored, 20);
        assert_eq!(r.upper_bound, 9);
        assert!(r.lower_bound >= 1);
        assert!(is_dynamic_monopoly(&c3k3, &tau, &r.witness).unwrap());
    }

    #[test]
    fn parallel_matches_sequential() {
        let c4k4 = product(cycle(4).unwrap(), complete(4).unwrap());
        for t in 2..=4 {
            let tau = ThresholdAssignment::constant(&c4k4, t).unwrap();
            let seq = min_dynamo(&c4k4, &tau, Budget::unlimited()).unwrap();
            let par = min_dynamo(&c4k4, &tau, Budget::unlimited().with_threads(4)).unwrap();
            assert_eq!(seq.optimum(), par.optimum());
            assert_eq!(seq.witness, par.witness);
            let seq = min_monopoly(&c4k4, &tau, Budget::unlimited()).unwrap();
            let par = min_monopoly(&c4k4, &tau, Budget::unlimited().with_threads(3)).unwrap();
            assert_eq!(seq.witness, par.witness);
        }
    }

    #[test]
    fn all_minimum_dynamos_of_k4() {
        let k4 = complete(4).unwrap();
        let tau = ThresholdAssignment::constant(&k4, 2).unwrap();
        let all = all_min_dynamos(&k4, &tau, Budget::unlimited()).unwrap();
        assert_eq!(all.len(), 6);
        assert!(all.iter().all(|s| s.len() == 2));
    }

    #[test]
    fn empty_graph() {
        let g = Graph::from_edges(0, &[]).unwrap();
        let tau = ThresholdAssignment::constant(&g, 1).unwrap();
        assert_eq!(min_dynamo(&g, &tau, Budget::unlimited()).unwrap().optimum(), Some(0));
    }
}
