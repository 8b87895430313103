//! Simple undirected graphs, the generator families used throughout the
//! crate, Cartesian products and line graphs.
//!
//! Vertex ids are contiguous and 0-based. Product graphs additionally carry
//! a 1-based row/column labelling: row `i` ranges over the vertices of the
//! first factor and column `j` over the vertices of the second.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// 1-based position of a vertex in the array layout of a product graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GridCoord {
    pub row: usize,
    pub col: usize,
}

impl GridCoord {
    pub fn new(row: usize, col: usize) -> Self {
        GridCoord { row, col }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    rows: usize,
    cols: usize,
    coords: Vec<GridCoord>,
    // (row - 1) * cols + (col - 1) -> vertex id
    index: Vec<usize>,
}

impl Grid {
    fn new(rows: usize, cols: usize, coords: Vec<GridCoord>) -> Result<Self> {
        if rows * cols != coords.len() {
            return Err(Error::invalid(format!(
                "grid {rows}x{cols} does not match {} labelled vertices",
                coords.len()
            )));
        }
        let mut index = vec![usize::MAX; coords.len()];
        for (v, c) in coords.iter().enumerate() {
            if c.row == 0 || c.row > rows || c.col == 0 || c.col > cols {
                return Err(Error::invalid(format!(
                    "label ({}, {}) of vertex {v} is outside the {rows}x{cols} grid",
                    c.row, c.col
                )));
            }
            let slot = (c.row - 1) * cols + (c.col - 1);
            if index[slot] != usize::MAX {
                return Err(Error::invalid(format!(
                    "label ({}, {}) is used twice",
                    c.row, c.col
                )));
            }
            index[slot] = v;
        }
        Ok(Grid {
            rows,
            cols,
            coords,
            index,
        })
    }

    fn row_major(rows: usize, cols: usize) -> Self {
        let coords = (0..rows * cols)
            .map(|v| GridCoord::new(v / cols + 1, v % cols + 1))
            .collect();
        Grid {
            rows,
            cols,
            coords,
            index: (0..rows * cols).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn coords(&self) -> &[GridCoord] {
        &self.coords
    }
}

/// Immutable simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
    grid: Option<Grid>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops, repeated edges and
    /// out-of-range endpoints.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut sets = vec![BTreeSet::new(); vertex_count];
        for &(u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::invalid(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{vertex_count}"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            if !sets[u].insert(v) {
                return Err(Error::invalid(format!("repeated edge ({u}, {v})")));
            }
            sets[v].insert(u);
        }
        Ok(Self::from_sets(sets))
    }

    fn from_sets(sets: Vec<BTreeSet<usize>>) -> Self {
        let adjacency: Vec<Vec<usize>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Graph {
            adjacency,
            edge_count,
            grid: None,
        }
    }

    /// Attaches a row/column labelling. `coords[v]` is the label of vertex `v`.
    pub fn with_grid(mut self, rows: usize, cols: usize, coords: Vec<GridCoord>) -> Result<Self> {
        if coords.len() != self.vertex_count() {
            return Err(Error::invalid(format!(
                "{} labels supplied for {} vertices",
                coords.len(),
                self.vertex_count()
            )));
        }
        self.grid = Some(Grid::new(rows, cols, coords)?);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    /// Sorted neighbour list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.adjacency.iter().map(Vec::len).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.adjacency.iter().map(Vec::len).max()
    }

    /// Common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.min_degree()?;
        (self.max_degree() == Some(d)).then_some(d)
    }

    /// Degrees sorted in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut seq: Vec<usize> = self.adjacency.iter().map(Vec::len).collect();
        seq.sort_unstable_by(|a, b| b.cmp(a));
        seq
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == n
    }

    /// Subgraph induced by `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let sets = vertices
            .iter()
            .map(|&v| {
                self.adjacency[v]
                    .iter()
                    .filter(|&&w| pos[w] != usize::MAX)
                    .map(|&w| pos[w])
                    .collect()
            })
            .collect();
        Self::from_sets(sets)
    }

    pub fn grid(&self) -> Option<&Grid> {
        self.grid.as_ref()
    }

    /// Vertex carrying the label `coord`.
    pub fn vertex_at(&self, coord: GridCoord) -> Result<usize> {
        let grid = self
            .grid
            .as_ref()
            .ok_or_else(|| Error::invalid("graph carries no grid labels"))?;
        if coord.row == 0 || coord.row > grid.rows || coord.col == 0 || coord.col > grid.cols {
            return Err(Error::invalid(format!(
                "coordinate ({}, {}) outside the {}x{} grid",
                coord.row, coord.col, grid.rows, grid.cols
            )));
        }
        Ok(grid.index[(coord.row - 1) * grid.cols + (coord.col - 1)])
    }

    /// Shorthand for `vertex_at(GridCoord::new(row, col))`.
    pub fn at(&self, row: usize, col: usize) -> Result<usize> {
        self.vertex_at(GridCoord::new(row, col))
    }

    pub fn coord_of(&self, v: usize) -> Result<GridCoord> {
        let grid = self
            .grid
            .as_ref()
            .ok_or_else(|| Error::invalid("graph carries no grid labels"))?;
        grid.coords
            .get(v)
            .copied()
            .ok_or_else(|| Error::invalid(format!("vertex {v} out of range")))
    }
}

/// The cycle C_n.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid(format!("cycle needs n >= 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

/// The complete graph K_n.
pub fn complete(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::invalid("complete graph needs n >= 1"));
    }
    let sets = (0..n).map(|v| (0..n).filter(|&w| w != v).collect()).collect();
    Ok(Graph::from_sets(sets))
}

/// The star K_{1,n}; vertex 0 is the centre.
pub fn star(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::invalid("star needs n >= 1"));
    }
    let edges: Vec<_> = (1..=n).map(|leaf| (0, leaf)).collect();
    Graph::from_edges(n + 1, &edges)
}

/// K_{m,n}; vertices `0..m` form the first side.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph> {
    if m < 1 || n < 1 {
        return Err(Error::invalid(format!(
            "complete bipartite graph needs both sides >= 1, got {m} and {n}"
        )));
    }
    let edges: Vec<_> = (0..m)
        .flat_map(|u| (m..m + n).map(move |v| (u, v)))
        .collect();
    Graph::from_edges(m + n, &edges)
}

/// Cartesian product `g □ h`. Vertex `(u, v)` gets id `u * |V(h)| + v` and
/// label `(u + 1, v + 1)`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph> {
    if g.is_empty() || h.is_empty() {
        return Err(Error::invalid("cartesian product of an empty graph"));
    }
    let (rows, cols) = (g.vertex_count(), h.vertex_count());
    let adjacency: Vec<Vec<usize>> = (0..rows * cols)
        .map(|id| {
            let (u, v) = (id / cols, id % cols);
            let mut ns: Vec<usize> = g
                .neighbors(u)
                .iter()
                .map(|&w| w * cols + v)
                .chain(h.neighbors(v).iter().map(|&w| u * cols + w))
                .collect();
            ns.sort_unstable();
            ns
        })
        .collect();
    let edge_count = rows * h.edge_count() + cols * g.edge_count();
    Ok(Graph {
        adjacency,
        edge_count,
        grid: Some(Grid::row_major(rows, cols)),
    })
}

/// Line graph. Vertex `i` is the `i`-th edge of `g` in lexicographic order.
pub fn line_graph(g: &Graph) -> Result<Graph> {
    if g.edge_count() == 0 {
        return Err(Error::invalid("line graph of an edgeless graph"));
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut incident = vec![Vec::new(); g.vertex_count()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(i);
        incident[v].push(i);
    }
    let mut sets = vec![BTreeSet::new(); edges.len()];
    for around in &incident {
        for (a, &e) in around.iter().enumerate() {
            for &f in &around[a + 1..] {
                sets[e].insert(f);
                sets[f].insert(e);
            }
        }
    }
    Ok(Graph::from_sets(sets))
}

/// Connected graph on `n` vertices: a random recursive spanning tree with
/// each remaining pair then joined with probability `p`.
pub fn random_connected<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("random graph needs at least one vertex"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("edge probability {p} outside [0, 1]")));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut sets = vec![BTreeSet::new(); n];
    for i in 1..n {
        let (u, v) = (order[i], order[rng.gen_range(0..i)]);
        sets[u].insert(v);
        sets[v].insert(u);
    }
    for u in 0..n {
        for v in u + 1..n {
            if !sets[u].contains(&v) && rng.gen_bool(p) {
                sets[u].insert(v);
                sets[v].insert(u);
            }
        }
    }
    Ok(Graph::from_sets(sets))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_graphs_are_connected_and_seeded() {
        use rand::SeedableRng;
        let mut a = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut b = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 1..15 {
            let g = random_connected(n, 0.3, &mut a).unwrap();
            assert!(g.is_connected());
            assert_eq!(g, random_connected(n, 0.3, &mut b).unwrap());
        }
        let tree = random_connected(10, 0.0, &mut a).unwrap();
        assert_eq!(tree.edge_count(), 9);
        assert_eq!(random_connected(6, 1.0, &mut a).unwrap().edge_count(), 15);
        assert!(random_connected(0, 0.5, &mut a).is_err());
    }

    fn assert_simple_symmetric(g: &Graph) {
        for v in 0..g.vertex_count() {
            let ns = g.neighbors(v);
            assert!(ns.windows(2).all(|w| w[0] < w[1]));
            assert!(!ns.contains(&v));
            for &w in ns {
                assert!(g.has_edge(w, v));
            }
        }
    }

    #[test]
    fn cycles() {
        let c3 = cycle(3).unwrap();
        assert_eq!((c3.vertex_count(), c3.edge_count()), (3, 3));
        assert_eq!(c3, complete(3).unwrap());
        let c4 = cycle(4).unwrap();
        assert_eq!(c4.regular_degree(), Some(2));
        let c5 = cycle(5).unwrap();
        assert_eq!(c5.edge_count(), 5);
        assert!(c5.is_connected());
        assert!(matches!(cycle(2), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn completes_and_stars() {
        let k1 = complete(1).unwrap();
        assert_eq!((k1.vertex_count(), k1.edge_count()), (1, 0));
        assert_eq!(complete(2).unwrap().edge_count(), 1);
        let k4 = complete(4).unwrap();
        assert_eq!((k4.edge_count(), k4.regular_degree()), (6, Some(3)));
        assert!(complete(0).is_err());

        assert_eq!(star(1).unwrap(), complete(2).unwrap());
        let claw = star(3).unwrap();
        assert_eq!(claw.degree(0), 3);
        assert!((1..4).all(|v| claw.degree(v) == 1));
        let s5 = star(5).unwrap();
        assert_eq!((s5.vertex_count(), s5.edge_count()), (6, 5));
        assert!(star(0).is_err());
    }

    #[test]
    fn bipartite() {
        assert_eq!(complete_bipartite(1, 4).unwrap(), star(4).unwrap());
        let k22 = complete_bipartite(2, 2).unwrap();
        assert_eq!((k22.edge_count(), k22.regular_degree()), (4, Some(2)));
        assert!(k22.is_connected());
        let k33 = complete_bipartite(3, 3).unwrap();
        assert_eq!((k33.edge_count(), k33.regular_degree()), (9, Some(3)));
        let k23 = complete_bipartite(2, 3).unwrap();
        assert_eq!(k23.degree(0), 3);
        assert_eq!(k23.degree(4), 2);
        assert!(complete_bipartite(0, 3).is_err());
    }

    #[test]
    fn products() {
        let k2 = complete(2).unwrap();
        let sq = cartesian_product(&k2, &k2).unwrap();
        assert_eq!((sq.edge_count(), sq.regular_degree()), (4, Some(2)));

        let c3k3 = cartesian_product(&cycle(3).unwrap(), &complete(3).unwrap()).unwrap();
        assert_eq!(c3k3.vertex_count(), 9);
        assert_eq!(c3k3.edge_count(), 18);
        assert_eq!(c3k3.regular_degree(), Some(4));
        assert_simple_symmetric(&c3k3);

        let torus = cartesian_product(&cycle(4).unwrap(), &cycle(4).unwrap()).unwrap();
        assert_eq!((torus.vertex_count(), torus.regular_degree()), (16, Some(4)));

        assert!(cartesian_product(&Graph::from_edges(0, &[]).unwrap(), &k2).is_err());
    }

    #[test]
    fn product_edge_count_counted_by_scan() {
        let g = star(3).unwrap();
        let h = cycle(5).unwrap();
        let p = cartesian_product(&g, &h).unwrap();
        assert_eq!(p.edges().count(), p.edge_count());
        assert_eq!(p.edge_count(), 4 * 5 + 5 * 3);
    }

    #[test]
    fn grid_labels() {
        let g = cartesian_product(&cycle(3).unwrap(), &complete(3).unwrap()).unwrap();
        let v11 = g.at(1, 1).unwrap();
        let mut around: Vec<GridCoord> = g
            .neighbors(v11)
            .iter()
            .map(|&w| g.coord_of(w).unwrap())
            .collect();
        around.sort();
        let expected = [(1, 2), (1, 3), (2, 1), (3, 1)].map(|(r, c)| GridCoord::new(r, c));
        assert_eq!(around, expected);

        for v in 0..g.vertex_count() {
            assert_eq!(g.vertex_at(g.coord_of(v).unwrap()).unwrap(), v);
        }
        assert!(g.at(0, 1).is_err());
        assert!(g.at(4, 1).is_err());
        assert!(cycle(4).unwrap().at(1, 1).is_err());
    }

    #[test]
    fn explicit_grid_rejects_bad_labels() {
        let g = complete(2).unwrap();
        let dup = vec![GridCoord::new(1, 1), GridCoord::new(1, 1)];
        assert!(g.clone().with_grid(1, 2, dup).is_err());
        let ok = vec![GridCoord::new(1, 2), GridCoord::new(1, 1)];
        let g = g.with_grid(1, 2, ok).unwrap();
        assert_eq!(g.at(1, 2).unwrap(), 0);
    }

    #[test]
    fn line_graphs() {
        let c5 = cycle(5).unwrap();
        let l = line_graph(&c5).unwrap();
        assert_eq!((l.vertex_count(), l.edge_count(), l.regular_degree()), (5, 5, Some(2)));
        assert!(l.is_connected());

        let claw = line_graph(&star(3).unwrap()).unwrap();
        assert_eq!(claw, complete(3).unwrap());

        let l33 = line_graph(&complete_bipartite(3, 3).unwrap()).unwrap();
        assert_eq!((l33.vertex_count(), l33.regular_degree()), (9, Some(4)));

        assert!(line_graph(&complete(1).unwrap()).is_err());
    }

    #[test]
    fn from_edges_rejects_non_simple() {
        assert!(Graph::from_edges(2, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 2)]).is_err());
    }
}
