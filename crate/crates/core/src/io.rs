//! Text and JSON formats, plus ASCII rendering of sets on labelled grids.
//!
//! Every JSON document carries a `"format"` tag. Readers accept documents
//! without the tag so that hand-written inputs such as `{"members": [1, 2]}`
//! work, but reject a tag naming a different format.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::bounds::BoundReport;
use crate::constructions::{Construction, Family, SetKind};
use crate::engine::{ActivationTrace, VertexSet};
use crate::error::{Error, Result};
use crate::graph::{Graph, GridCoord};
use crate::solver::{Objective, SolveResult, SolveStatus};
use crate::thresholds::ThresholdAssignment;

pub const GRAPH_FORMAT: &str = "monopoly.graph/1";
pub const THRESHOLDS_FORMAT: &str = "monopoly.thresholds/1";
pub const VERTEX_SET_FORMAT: &str = "monopoly.vertex-set/1";
pub const TRACE_FORMAT: &str = "monopoly.trace/1";
pub const SOLVE_FORMAT: &str = "monopoly.solve/1";
pub const BOUND_FORMAT: &str = "monopoly.bound/1";
pub const CONSTRUCTION_FORMAT: &str = "monopoly.construction/1";

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        message: e.to_string(),
    }
}

fn check_format(found: &Option<String>, expected: &str) -> Result<()> {
    match found {
        Some(f) if f != expected => Err(Error::Parse {
            line: 1,
            message: format!("expected format {expected:?}, found {f:?}"),
        }),
        _ => Ok(()),
    }
}

fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(json_error)
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents serialize")
}

// ---- edge lists ----

/// Parses `n m` followed by `m` lines `u v`. Blank lines and lines starting
/// with `#` are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing \"n m\" header".into(),
    })?;
    let [n, m] = parse_pair(header_line, header)?;

    let mut edges = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line, l) in lines {
        let [u, v] = parse_pair(line, l)?;
        if u >= n || v >= n {
            return Err(Error::Parse {
                line,
                message: format!("edge ({u}, {v}) has an endpoint outside 0..{n}"),
            });
        }
        if edges.len() == m {
            return Err(Error::Parse {
                line,
                message: format!("more than the {m} edges announced in the header"),
            });
        }
        edges.push((u, v));
        last_line = line;
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: last_line,
            message: format!("header announces {m} edges, found {}", edges.len()),
        });
    }
    Graph::from_edges(n, &edges).map_err(|e| Error::Parse {
        line: last_line,
        message: e.to_string(),
    })
}

fn parse_pair(line: usize, text: &str) -> Result<[usize; 2]> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::Parse {
            line,
            message: format!("expected two integers, found {:?}", text),
        });
    }
    let mut out = [0; 2];
    for (slot, field) in out.iter_mut().zip(&fields) {
        *slot = field.parse().map_err(|_| Error::Parse {
            line,
            message: format!("{field:?} is not a non-negative integer"),
        })?;
    }
    Ok(out)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

// ---- graphs ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridDoc {
    pub rows: usize,
    pub cols: usize,
    /// `labels[v] = [row, col]`, 1-based.
    pub labels: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    #[serde(default)]
    pub format: Option<String>,
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridDoc>,
}

impl GraphDoc {
    pub fn from_graph(g: &Graph) -> Self {
        GraphDoc {
            format: Some(GRAPH_FORMAT.into()),
            vertices: g.vertex_count(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
            grid: g.grid().map(|grid| GridDoc {
                rows: grid.rows(),
                cols: grid.cols(),
                labels: grid.coords().iter().map(|c| [c.row, c.col]).collect(),
            }),
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        check_format(&self.format, GRAPH_FORMAT)?;
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&[u, v]| (u, v)).collect();
        let g = Graph::from_edges(self.vertices, &edges)?;
        match &self.grid {
            None => Ok(g),
            Some(grid) => {
                let coords = grid.labels.iter().map(|&[r, c]| GridCoord::new(r, c)).collect();
                g.with_grid(grid.rows, grid.cols, coords)
            }
        }
    }
}

pub fn graph_to_json(g: &Graph) -> String {
    to_json(&GraphDoc::from_graph(g))
}

pub fn graph_from_json(text: &str) -> Result<Graph> {
    from_json::<GraphDoc>(text)?.to_graph()
}

/// Reads either format, picking JSON when the first non-blank byte is `{`.
pub fn read_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        graph_from_json(text)
    } else {
        parse_edge_list(text)
    }
}

// ---- thresholds ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdsDoc {
    #[serde(default)]
    pub format: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<u32>>,
    /// Set when thresholds may exceed degrees.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub uncapped: bool,
}

impl ThresholdsDoc {
    pub fn from_thresholds(g: &Graph, tau: &ThresholdAssignment) -> Self {
        let constant = tau.as_constant();
        ThresholdsDoc {
            format: Some(THRESHOLDS_FORMAT.into()),
            constant,
            values: constant.is_none().then(|| tau.values().to_vec()),
            uncapped: !tau.is_valid_for(g),
        }
    }

    pub fn to_thresholds(&self, g: &Graph) -> Result<ThresholdAssignment> {
        check_format(&self.format, THRESHOLDS_FORMAT)?;
        match (self.constant, &self.values) {
            (Some(t), None) if self.uncapped => ThresholdAssignment::constant_unbounded(g, t),
            (Some(t), None) => ThresholdAssignment::constant(g, t),
            (None, Some(values)) if !self.uncapped => ThresholdAssignment::explicit(g, values.clone()),
            (None, Some(_)) => Err(Error::invalid("uncapped thresholds must be constant")),
            _ => Err(Error::invalid("thresholds need exactly one of \"constant\" and \"values\"")),
        }
    }
}

pub fn thresholds_to_json(g: &Graph, tau: &ThresholdAssignment) -> String {
    to_json(&ThresholdsDoc::from_thresholds(g, tau))
}

pub fn thresholds_from_json(text: &str, g: &Graph) -> Result<ThresholdAssignment> {
    from_json::<ThresholdsDoc>(text)?.to_thresholds(g)
}

// ---- vertex sets ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct VertexSetDoc {
    #[serde(default)]
    format: Option<String>,
    members: Vec<usize>,
}

pub fn vertex_set_to_json(s: &VertexSet) -> String {
    to_json(&VertexSetDoc {
        format: Some(VERTEX_SET_FORMAT.into()),
        members: s.members().to_vec(),
    })
}

pub fn vertex_set_from_json(text: &str) -> Result<VertexSet> {
    let doc: VertexSetDoc = from_json(text)?;
    check_format(&doc.format, VERTEX_SET_FORMAT)?;
    Ok(VertexSet::new(doc.members))
}

// ---- traces ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct TraceDoc {
    #[serde(default)]
    format: Option<String>,
    layers: Vec<Vec<usize>>,
    complete: bool,
}

pub fn trace_to_json(trace: &ActivationTrace) -> String {
    to_json(&TraceDoc {
        format: Some(TRACE_FORMAT.into()),
        layers: trace.layers.iter().map(|l| l.members().to_vec()).collect(),
        complete: trace.complete,
    })
}

pub fn trace_from_json(text: &str) -> Result<ActivationTrace> {
    let doc: TraceDoc = from_json(text)?;
    check_format(&doc.format, TRACE_FORMAT)?;
    let layers: Vec<VertexSet> = doc.layers.into_iter().map(VertexSet::new).collect();
    let activated = layers.iter().flat_map(|l| l.iter()).collect();
    Ok(ActivationTrace {
        layers,
        activated,
        complete: doc.complete,
    })
}

// ---- solver results ----

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveDoc {
    #[serde(default)]
    pub format: Option<String>,
    pub objective: Objective,
    pub status: SolveStatus,
    pub optimum: Option<usize>,
    pub lower_bound: usize,
    pub upper_bound: usize,
    pub witness: Vec<usize>,
    pub explored: u64,
    pub elapsed_ms: f64,
}

impl From<&SolveResult> for SolveDoc {
    fn from(r: &SolveResult) -> Self {
        SolveDoc {
            format: Some(SOLVE_FORMAT.into()),
            objective: r.objective,
            status: r.status,
            optimum: r.optimum(),
            lower_bound: r.lower_bound,
            upper_bound: r.upper_bound,
            witness: r.witness.members().to_vec(),
            explored: r.explored,
            elapsed_ms: r.elapsed.as_secs_f64() * 1e3,
        }
    }
}

pub fn solve_to_json(r: &SolveResult) -> String {
    to_json(&SolveDoc::from(r))
}

pub fn solve_from_json(text: &str) -> Result<SolveDoc> {
    let doc: SolveDoc = from_json(text)?;
    check_format(&doc.format, SOLVE_FORMAT)?;
    Ok(doc)
}

// ---- bounds ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct BoundDoc {
    #[serde(default)]
    format: Option<String>,
    #[serde(flatten)]
    report: BoundReport,
}

pub fn bound_to_json(report: &BoundReport) -> String {
    to_json(&BoundDoc {
        format: Some(BOUND_FORMAT.into()),
        report: report.clone(),
    })
}

pub fn bound_from_json(text: &str) -> Result<BoundReport> {
    let doc: BoundDoc = from_json(text)?;
    check_format(&doc.format, BOUND_FORMAT)?;
    Ok(doc.report)
}

// ---- constructions ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionDoc {
    #[serde(default)]
    pub format: Option<String>,
    pub family: Family,
    pub params: BTreeMap<String, usize>,
    pub kind: SetKind,
    pub claimed_size: usize,
    pub exact: bool,
    pub graph: GraphDoc,
    pub thresholds: ThresholdsDoc,
    pub members: Vec<usize>,
    /// `[row, col]` of each member, in member order.
    pub cells: Vec<[usize; 2]>,
}

impl ConstructionDoc {
    pub fn from_construction(c: &Construction) -> Self {
        let cells = c
            .set
            .iter()
            .map(|v| {
                let at = c.graph.coord_of(v).expect("constructions are labelled");
                [at.row, at.col]
            })
            .collect();
        ConstructionDoc {
            format: Some(CONSTRUCTION_FORMAT.into()),
            family: c.family,
            params: c.params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            kind: c.kind,
            claimed_size: c.claimed_size,
            exact: c.exact,
            graph: GraphDoc::from_graph(&c.graph),
            thresholds: ThresholdsDoc::from_thresholds(&c.graph, &c.thresholds),
            members: c.set.members().to_vec(),
            cells,
        }
    }

    /// Rebuilds the instance; the set is not re-verified.
    pub fn to_parts(&self) -> Result<(Graph, ThresholdAssignment, VertexSet)> {
        check_format(&self.format, CONSTRUCTION_FORMAT)?;
        let g = self.graph.to_graph()?;
        let tau = self.thresholds.to_thresholds(&g)?;
        Ok((g, tau, VertexSet::new(self.members.clone())))
    }
}

pub fn construction_to_json(c: &Construction) -> String {
    to_json(&ConstructionDoc::from_construction(c))
}

pub fn construction_from_json(text: &str) -> Result<ConstructionDoc> {
    let doc: ConstructionDoc = from_json(text)?;
    check_format(&doc.format, CONSTRUCTION_FORMAT)?;
    Ok(doc)
}

// ---- rendering ----

/// One line per grid row, `*` for members of `s` and `.` otherwise.
pub fn render_grid(g: &Graph, s: &VertexSet) -> Result<String> {
    let grid = g
        .grid()
        .ok_or_else(|| Error::invalid("cannot render a graph without grid labels"))?;
    let mask = s.mask(g.vertex_count());
    let mut out = String::with_capacity(grid.rows() * (grid.cols() + 1));
    for row in 1..=grid.rows() {
        for col in 1..=grid.cols() {
            let v = g.at(row, col)?;
            out.push(if mask.get(v).copied().unwrap_or(false) { '*' } else { '.' });
        }
        out.push('\n');
    }
    Ok(out)
}

/// Grid snapshots of the active set after each round of `trace`.
pub fn render_trace(g: &Graph, trace: &ActivationTrace) -> Result<String> {
    let mut out = String::new();
    let mut active = VertexSet::empty();
    for (round, layer) in trace.layers.iter().enumerate() {
        active = active.union(layer);
        let _ = writeln!(out, "round {round}: +{} active {}", layer.len(), active.len());
        out.push_str(&render_grid(g, &active)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{dyn_cycle_complete_t, dyn_star_star, mon_cycle_complete};
    use crate::engine::activate;
    use crate::graph::{cartesian_product, complete, cycle};

    #[test]
    fn edge_list_round_trip() {
        let g = cartesian_product(&cycle(3).unwrap(), &complete(3).unwrap()).unwrap();
        let text = write_edge_list(&g);
        assert!(text.starts_with("9 18\n"));
        let back = parse_edge_list(&text).unwrap();
        assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn edge_list_errors_carry_lines() {
        let cases = [
            ("", 1),
            ("3 2\n0 1\n", 2),
            ("3 1\n0 1\n1 2\n", 3),
            ("3 1\n\n0 x\n", 3),
            ("3 1\n0 5\n", 2),
            ("3 2\n0 1\n1 0\n", 3),
            ("2\n", 1),
        ];
        for (text, want) in cases {
            match parse_edge_list(text) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, want, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        let g = parse_edge_list("# triangle\n3 3\n0 1\n1 2\n\n0 2\n").unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn json_errors_carry_lines() {
        match graph_from_json("{\n\"vertices\": 2,\n\"edges\": [[0, 1]\n") {
            Err(Error::Parse { line, .. }) => assert!(line >= 3),
            other => panic!("{other:?}"),
        }
        assert!(vertex_set_from_json("{\"format\": \"monopoly.trace/1\", \"members\": []}").is_err());
    }

    #[test]
    fn graph_json_keeps_labels() {
        let g = cartesian_product(&cycle(3).unwrap(), &complete(4).unwrap()).unwrap();
        let back = graph_from_json(&graph_to_json(&g)).unwrap();
        assert_eq!(back, g);
        assert_eq!(read_graph(&graph_to_json(&g)).unwrap(), g);
        assert_eq!(back.at(2, 3).unwrap(), g.at(2, 3).unwrap());
    }

    #[test]
    fn thresholds_and_sets() {
        let g = cartesian_product(&cycle(3).unwrap(), &complete(3).unwrap()).unwrap();
        let tau = ThresholdAssignment::constant(&g, 3).unwrap();
        let text = thresholds_to_json(&g, &tau);
        assert!(text.contains("\"constant\": 3"));
        assert_eq!(thresholds_from_json(&text, &g).unwrap(), tau);
        assert!(thresholds_from_json("{\"constant\": 5}", &g).is_err());
        assert!(thresholds_from_json("{\"constant\": 2, \"values\": [2]}", &g).is_err());

        let s = VertexSet::new(vec![4, 0, 4, 2]);
        assert_eq!(vertex_set_from_json(&vertex_set_to_json(&s)).unwrap(), s);
        assert_eq!(vertex_set_from_json("{\"members\": [3, 1]}").unwrap().members(), &[1, 3]);
    }

    #[test]
    fn uncapped_thresholds_survive() {
        let c = dyn_star_star(3, 3).unwrap();
        let doc = construction_from_json(&construction_to_json(&c)).unwrap();
        assert!(doc.thresholds.uncapped);
        let (g, tau, set) = doc.to_parts().unwrap();
        assert_eq!((g, tau, set), (c.graph.clone(), c.thresholds.clone(), c.set.clone()));
    }

    #[test]
    fn trace_round_trip() {
        let c = dyn_cycle_complete_t(4, 4, 4).unwrap();
        let trace = activate(&c.graph, &c.thresholds, &c.set).unwrap();
        let back = trace_from_json(&trace_to_json(&trace)).unwrap();
        assert_eq!(back, trace);
        let text = render_trace(&c.graph, &trace).unwrap();
        assert!(text.starts_with("round 0: +8 active 8\n"));
        assert!(text.ends_with("****\n****\n****\n****\n"));
    }

    #[test]
    fn grids() {
        let g = cartesian_product(&cycle(3).unwrap(), &complete(2).unwrap()).unwrap();
        assert_eq!(render_grid(&g, &VertexSet::empty()).unwrap(), "..\n..\n..\n");
        assert_eq!(render_grid(&g, &VertexSet::full(6)).unwrap(), "**\n**\n**\n");
        assert!(render_grid(&cycle(4).unwrap(), &VertexSet::empty()).is_err());

        let up = mon_cycle_complete(7, 9, 6).unwrap();
        let text = render_grid(&up.graph, &up.set).unwrap();
        let rows: Vec<&str> = text.lines().collect();
        assert_eq!(rows[0], "*****....");
        assert_eq!(rows[1], ".....****");
        assert_eq!(text.matches('*').count(), 32);
    }
}
