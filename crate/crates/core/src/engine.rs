//! The threshold activation process and the monopoly / dynamo predicates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::thresholds::ThresholdAssignment;

/// A sorted, duplicate-free set of vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "RawVertexSet")]
pub struct VertexSet {
    members: Vec<usize>,
}

#[derive(Deserialize)]
struct RawVertexSet {
    members: Vec<usize>,
}

impl From<RawVertexSet> for VertexSet {
    fn from(raw: RawVertexSet) -> Self {
        VertexSet::new(raw.members)
    }
}

impl VertexSet {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSet { members }
    }

    pub fn empty() -> Self {
        VertexSet::default()
    }

    pub fn full(n: usize) -> Self {
        VertexSet {
            members: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::new(self.iter().chain(other.iter()).collect())
    }

    pub fn without(&self, v: usize) -> VertexSet {
        VertexSet {
            members: self.iter().filter(|&w| w != v).collect(),
        }
    }

    /// Membership as a dense mask over `0..n`.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for v in self.iter() {
            mask[v] = true;
        }
        mask
    }

    fn check_range(&self, g: &Graph) -> Result<()> {
        match self.members.last() {
            Some(&v) if v >= g.vertex_count() => Err(Error::invalid(format!(
                "vertex {v} outside a graph of {} vertices",
                g.vertex_count()
            ))),
            _ => Ok(()),
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

/// Layers `D_0, D_1, ..., D_k` of a synchronous spread: `D_0` is the seed
/// and `D_{i+1}` is every inactive vertex whose active neighbours reach its
/// threshold once `D_0 ∪ ... ∪ D_i` is active.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActivationTrace {
    pub layers: Vec<VertexSet>,
    pub activated: VertexSet,
    pub complete: bool,
}

impl ActivationTrace {
    /// Number of rounds after the seed.
    pub fn rounds(&self) -> usize {
        self.layers.len().saturating_sub(1)
    }

    /// Re-checks every trace invariant against `g` and `tau`: layers are
    /// disjoint, each vertex of `D_{i+1}` meets its threshold against the
    /// earlier layers, only `D_0` may be empty, and nothing outside the
    /// activated set could still fire.
    pub fn replay(&self, g: &Graph, tau: &ThresholdAssignment) -> bool {
        let n = g.vertex_count();
        let mut active = vec![false; n];
        for (i, layer) in self.layers.iter().enumerate() {
            if i > 0 && layer.is_empty() {
                return false;
            }
            if layer.iter().any(|v| v >= n || active[v]) {
                return false;
            }
            if i > 0 {
                let fired = layer.iter().all(|v| {
                    let hits = g.neighbors(v).iter().filter(|&&w| active[w]).count();
                    hits >= tau.get(v) as usize
                });
                if !fired {
                    return false;
                }
            }
            for v in layer.iter() {
                active[v] = true;
            }
        }
        let maximal = (0..n).all(|v| {
            active[v] || g.neighbors(v).iter().filter(|&&w| active[w]).count() < tau.get(v) as usize
        });
        let count = active.iter().filter(|&&a| a).count();
        maximal
            && count == self.activated.len()
            && self.activated.iter().all(|v| active[v])
            && self.complete == (count == n)
    }
}

fn check_inputs(g: &Graph, tau: &ThresholdAssignment, set: &VertexSet) -> Result<()> {
    if tau.len() != g.vertex_count() {
        return Err(Error::invalid(format!(
            "{} thresholds for a graph of {} vertices",
            tau.len(),
            g.vertex_count()
        )));
    }
    set.check_range(g)
}

/// Runs the synchronous spread from `seed` to its fixed point.
pub fn activate(g: &Graph, tau: &ThresholdAssignment, seed: &VertexSet) -> Result<ActivationTrace> {
    check_inputs(g, tau, seed)?;
    let n = g.vertex_count();
    let mut active = seed.mask(n);
    let mut hits = vec![0u32; n];
    let mut layers = vec![seed.clone()];
    let mut frontier: Vec<usize> = seed.members().to_vec();
    let mut total = seed.len();

    loop {
        let mut next = Vec::new();
        for &v in &frontier {
            for &w in g.neighbors(v) {
                if !active[w] {
                    hits[w] += 1;
                    if hits[w] == tau.get(w) {
                        next.push(w);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        for &w in &next {
            active[w] = true;
        }
        total += next.len();
        let layer = VertexSet::new(next);
        frontier = layer.members().to_vec();
        layers.push(layer);
    }

    let activated = VertexSet {
        members: (0..n).filter(|&v| active[v]).collect(),
    };
    Ok(ActivationTrace {
        layers,
        activated,
        complete: total == n,
    })
}

/// Fixed point of the spread when vertices are scanned one at a time in
/// `order`, each firing as soon as it is examined and meets its threshold.
/// Repeats full passes until nothing changes.
pub fn fixed_point_in_order(
    g: &Graph,
    tau: &ThresholdAssignment,
    seed: &VertexSet,
    order: &[usize],
) -> Result<VertexSet> {
    check_inputs(g, tau, seed)?;
    let n = g.vertex_count();
    if order.len() != n || VertexSet::new(order.to_vec()) != VertexSet::full(n) {
        return Err(Error::invalid("scan order must be a permutation of the vertices"));
    }
    let mut active = seed.mask(n);
    let mut changed = true;
    while changed {
        changed = false;
        for &v in order {
            if active[v] {
                continue;
            }
            let hits = g.neighbors(v).iter().filter(|&&w| active[w]).count();
            if hits >= tau.get(v) as usize {
                active[v] = true;
                changed = true;
            }
        }
    }
    Ok((0..n).filter(|&v| active[v]).collect())
}

/// Result of a static monopoly check; `witness` is the smallest vertex
/// outside the set that lacks enough neighbours inside it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonopolyCheck {
    pub holds: bool,
    pub witness: Option<usize>,
}

pub fn is_static_monopoly(g: &Graph, tau: &ThresholdAssignment, m: &VertexSet) -> Result<MonopolyCheck> {
    check_inputs(g, tau, m)?;
    let inside = m.mask(g.vertex_count());
    let witness = (0..g.vertex_count()).find(|&v| {
        !inside[v] && g.neighbors(v).iter().filter(|&&w| inside[w]).count() < tau.get(v) as usize
    });
    Ok(MonopolyCheck {
        holds: witness.is_none(),
        witness,
    })
}

pub fn is_dynamic_monopoly(g: &Graph, tau: &ThresholdAssignment, d: &VertexSet) -> Result<bool> {
    Ok(activate(g, tau, d)?.complete)
}

/// Reusable spread buffers for running many activations on one instance.
pub(crate) struct Spreader<'a> {
    g: &'a Graph,
    tau: &'a [u32],
    active: Vec<bool>,
    hits: Vec<u32>,
    queue: Vec<usize>,
    touched: Vec<usize>,
}

impl<'a> Spreader<'a> {
    pub(crate) fn new(g: &'a Graph, tau: &'a ThresholdAssignment) -> Self {
        let n = g.vertex_count();
        Spreader {
            g,
            tau: tau.values(),
            active: vec![false; n],
            hits: vec![0; n],
            queue: Vec::with_capacity(n),
            touched: Vec::with_capacity(n),
        }
    }

    /// Whether `seed` activates every vertex.
    pub(crate) fn spreads_fully(&mut self, seed: &[usize]) -> bool {
        let n = self.g.vertex_count();
        self.queue.clear();
        for &v in seed {
            if !self.active[v] {
                self.active[v] = true;
                self.queue.push(v);
            }
        }
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for &w in self.g.neighbors(v) {
                if !self.active[w] {
                    if self.hits[w] == 0 {
                        self.touched.push(w);
                    }
                    self.hits[w] += 1;
                    if self.hits[w] >= self.tau[w] {
                        self.active[w] = true;
                        self.queue.push(w);
                    }
                }
            }
        }
        let done = self.queue.len() == n;
        for &v in &self.queue {
            self.active[v] = false;
        }
        for &w in &self.touched {
            self.hits[w] = 0;
        }
        self.touched.clear();
        done
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cartesian_product, complete, cycle};

    fn k3k3() -> Graph {
        cartesian_product(&complete(3).unwrap(), &complete(3).unwrap()).unwrap()
    }

    fn cells(g: &Graph, cs: &[(usize, usize)]) -> VertexSet {
        cs.iter().map(|&(r, c)| g.at(r, c).unwrap()).collect()
    }

    #[test]
    fn diagonal_of_k3k3_completes_in_one_round() {
        let g = k3k3();
        let tau = ThresholdAssignment::constant(&g, 2).unwrap();
        let diag = cells(&g, &[(1, 1), (2, 2), (3, 3)]);
        let trace = activate(&g, &tau, &diag).unwrap();
        assert!(trace.complete);
        assert_eq!(trace.rounds(), 1);
        assert_eq!(trace.layers[1].len(), 6);
        assert!(trace.replay(&g, &tau));
    }

    #[test]
    fn empty_seed_stays_empty() {
        let g = cycle(5).unwrap();
        let tau = ThresholdAssignment::constant(&g, 1).unwrap();
        let trace = activate(&g, &tau, &VertexSet::empty()).unwrap();
        assert_eq!(trace.layers, vec![VertexSet::empty()]);
        assert!(!trace.complete);
        assert!(trace.replay(&g, &tau));
    }

    #[test]
    fn odd_diagonal_of_c4k4_spreads() {
        let g = cartesian_product(&cycle(4).unwrap(), &complete(4).unwrap()).unwrap();
        let tau = ThresholdAssignment::constant(&g, 2).unwrap();
        let d = cells(&g, &[(1, 1), (3, 3), (4, 4)]);
        let trace = activate(&g, &tau, &d).unwrap();
        assert!(trace.complete);
        assert!(trace.replay(&g, &tau));
    }

    #[test]
    fn static_monopoly_checks() {
        let g = k3k3();
        let tau = ThresholdAssignment::constant(&g, 2).unwrap();
        assert!(is_static_monopoly(&g, &tau, &VertexSet::full(9)).unwrap().holds);
        assert!(is_static_monopoly(&g, &tau, &cells(&g, &[(1, 1), (2, 2), (3, 3)])).unwrap().holds);

        // (1,1),(2,2) kept: (3,3) sees neither row 3 nor column 3 members.
        let two = cells(&g, &[(1, 1), (2, 2)]);
        let check = is_static_monopoly(&g, &tau, &two).unwrap();
        assert!(!check.holds);
        assert_eq!(check.witness, Some(g.at(1, 3).unwrap()));
    }

    #[test]
    fn witness_is_smallest_violator_by_scan() {
        let g = k3k3();
        let tau = ThresholdAssignment::constant(&g, 2).unwrap();
        let two = cells(&g, &[(1, 1), (2, 2)]);
        let mask = two.mask(9);
        let violators: Vec<usize> = (0..9)
            .filter(|&v| !mask[v] && g.neighbors(v).iter().filter(|&&w| mask[w]).count() < 2)
            .collect();
        assert_eq!(
            is_static_monopoly(&g, &tau, &two).unwrap().witness,
            violators.first().copied()
        );
    }

    #[test]
    fn dynamic_monopolies_of_c3k3_threshold_three() {
        let g = cartesian_product(&cycle(3).unwrap(), &complete(3).unwrap()).unwrap();
        let tau = ThresholdAssignment::constant(&g, 3).unwrap();
        let diag = cells(&g, &[(1, 1), (2, 2), (3, 3)]);
        assert!(!is_dynamic_monopoly(&g, &tau, &diag).unwrap());
        let plus = diag.union(&cells(&g, &[(2, 3)]));
        assert!(is_dynamic_monopoly(&g, &tau, &plus).unwrap());
    }

    #[test]
    fn static_trace_has_two_layers() {
        let g = k3k3();
        let tau = ThresholdAssignment::constant(&g, 2).unwrap();
        let m = cells(&g, &[(1, 1), (2, 2), (3, 3)]);
        let trace = activate(&g, &tau, &m).unwrap();
        let rest: VertexSet = (0..9).filter(|&v| !m.contains(v)).collect();
        assert_eq!(trace.layers, vec![m, rest]);
    }

    #[test]
    fn range_errors() {
        let g = cycle(4).unwrap();
        let tau = ThresholdAssignment::constant(&g, 1).unwrap();
        let bad = VertexSet::new(vec![4]);
        assert!(activate(&g, &tau, &bad).is_err());
        assert!(is_static_monopoly(&g, &tau, &bad).is_err());
        let other = ThresholdAssignment::constant(&cycle(5).unwrap(), 1).unwrap();
        assert!(activate(&g, &other, &VertexSet::empty()).is_err());
        assert!(fixed_point_in_order(&g, &tau, &VertexSet::empty(), &[0, 1, 2]).is_err());
    }

    #[test]
    fn spreader_agrees_with_activate() {
        let g = cartesian_product(&cycle(4).unwrap(), &complete(3).unwrap()).unwrap();
        let tau = ThresholdAssignment::constant(&g, 3).unwrap();
        let mut spreader = Spreader::new(&g, &tau);
        for mask in 0u32..(1 << 12) {
            if mask.count_ones() > 5 {
                continue;
            }
            let seed: Vec<usize> = (0..12).filter(|&v| mask >> v & 1 == 1).collect();
            let expected = activate(&g, &tau, &VertexSet::new(seed.clone())).unwrap().complete;
            assert_eq!(spreader.spreads_fully(&seed), expected, "seed {seed:?}");
        }
    }

    #[test]
    fn vertex_set_json_normalises() {
        let s: VertexSet = serde_json::from_str(r#"{"members":[3,1,3]}"#).unwrap();
        assert_eq!(s.members(), &[1, 3]);
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"members":[1,3]}"#);
    }
}
