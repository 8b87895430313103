//! Named check bundles that replay the published claims against the engine,
//! the constructions, the bounds and the exhaustive solver.
//!
//! Randomised bundles draw from a ChaCha stream seeded by the caller, so a
//! run is reproducible from its seed alone.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{self, BoundReport};
use crate::constructions::{self, Construction, Family};
use crate::engine::{activate, fixed_point_in_order, is_dynamic_monopoly, VertexSet};
use crate::error::{Error, Result};
use crate::graph::{cartesian_product, complete, complete_bipartite, cycle, line_graph, random_connected, Graph};
use crate::io::render_grid;
use crate::solver::{min_dynamo, min_monopoly, Budget};
use crate::thresholds::ThresholdAssignment;

pub const DEFAULT_SEED: u64 = 0x6d6f_6e6f;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bundle {
    Constructions,
    GridLayouts,
    Exactness,
    Sandwich,
    ThresholdDecrement,
    LineGraph,
    BoundRegression,
    Engine,
}

impl Bundle {
    pub const ALL: [Bundle; 8] = [
        Bundle::Constructions,
        Bundle::GridLayouts,
        Bundle::Exactness,
        Bundle::Sandwich,
        Bundle::ThresholdDecrement,
        Bundle::LineGraph,
        Bundle::BoundRegression,
        Bundle::Engine,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Bundle::Constructions => "constructions",
            Bundle::GridLayouts => "grid-layouts",
            Bundle::Exactness => "exactness",
            Bundle::Sandwich => "sandwich",
            Bundle::ThresholdDecrement => "threshold-decrement",
            Bundle::LineGraph => "line-graph",
            Bundle::BoundRegression => "bound-regression",
            Bundle::Engine => "engine",
        }
    }
}

impl fmt::Display for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Bundle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Bundle::ALL
            .into_iter()
            .find(|b| b.tag() == s)
            .ok_or_else(|| Error::invalid(format!("unknown bundle {s:?}")))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Outcome {
    pub instance: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct BundleReport {
    pub bundle: Bundle,
    pub seed: u64,
    pub outcomes: Vec<Outcome>,
}

impl BundleReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Outcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }
}

struct Recorder(Vec<Outcome>);

impl Recorder {
    fn check(&mut self, instance: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(Outcome {
            instance: instance.into(),
            passed,
            detail: detail.into(),
        });
    }
}

pub fn run(bundle: Bundle, seed: u64) -> Result<BundleReport> {
    let mut rec = Recorder(Vec::new());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match bundle {
        Bundle::Constructions => constructions_sweep(&mut rec),
        Bundle::GridLayouts => grid_layouts(&mut rec)?,
        Bundle::Exactness => exactness(&mut rec)?,
        Bundle::Sandwich => sandwich(&mut rec, &mut rng)?,
        Bundle::ThresholdDecrement => threshold_decrement(&mut rec, &mut rng)?,
        Bundle::LineGraph => line_graphs(&mut rec)?,
        Bundle::BoundRegression => bound_regression(&mut rec)?,
        Bundle::Engine => engine_properties(&mut rec, &mut rng)?,
    }
    Ok(BundleReport {
        bundle,
        seed,
        outcomes: rec.0,
    })
}

fn exact_solve(g: &Graph, tau: &ThresholdAssignment, dynamo: bool) -> Result<usize> {
    let r = if dynamo {
        min_dynamo(g, tau, Budget::unlimited())?
    } else {
        min_monopoly(g, tau, Budget::unlimited())?
    };
    Ok(r.optimum().expect("unlimited budget always solves"))
}

// ---- constructions ----

/// Every in-regime parameter tuple the sweep covers for `family`.
pub fn sweep_parameters(family: Family) -> Vec<Vec<usize>> {
    // both parities of m, small and near the 30 x 30 limit
    let ms = [3, 4, 5, 6, 7, 8, 9, 10, 15, 16, 29, 30];
    let mut out = Vec::new();
    match family {
        Family::Mon2Torus => out.extend((3..=30).map(|n| vec![n])),
        Family::MonDiag => out.extend((2..=30).map(|n| vec![n])),
        Family::MonCirculant => out.extend((3..=29).step_by(2).map(|n| vec![n])),
        Family::DynCycleCompleteT2 | Family::DynCycleCompleteT3 => out.extend((3..=30).map(|n| vec![n])),
        Family::MonBlockDiag | Family::MonBlockComplement => {
            for t in (2..=30).step_by(2) {
                for k in 2..=60 / t {
                    out.push(vec![k, t]);
                }
            }
        }
        Family::MonCycleComplete => {
            for &m in &ms {
                for n in 1..=30 {
                    for t in 1..=n + 1 {
                        let narrow_gap = constructions::cycle_complete_regime(n, t)
                            == Some(constructions::CycleCompleteRegime::Narrow)
                            && m % 2 == 1
                            && 2 * n < 3 * (t - 2);
                        if !narrow_gap {
                            out.push(vec![m, n, t]);
                        }
                    }
                }
            }
        }
        Family::DynCycleComplete => {
            for &m in &ms {
                for n in 3..=30 {
                    for t in 4..=n + 1 {
                        out.push(vec![m, n, t]);
                    }
                }
            }
        }
        Family::DynStarStar => {
            for n in 3..=20 {
                for t in 3..=n {
                    out.push(vec![n, t]);
                }
            }
        }
        Family::DynCompleteComplete => {
            let sides: [usize; 14] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 15, 20, 29, 30];
            for &m in &sides {
                for &n in &sides {
                    for t in 1..=(m + n).saturating_sub(2) {
                        if m.min(n) >= t.div_ceil(2) {
                            out.push(vec![m, n, t]);
                        }
                    }
                }
            }
        }
        Family::DynCompleteCompleteSmallM => {
            for m in 1..=14 {
                for t in 2 * m + 1..=30 {
                    for n in t - m + 2..=30 {
                        out.push(vec![m, n, t]);
                    }
                }
            }
        }
    }
    out
}

fn constructions_sweep(rec: &mut Recorder) {
    for family in Family::ALL {
        let params = sweep_parameters(family);
        let mut failures = Vec::new();
        for args in &params {
            match constructions::build(family, args) {
                Ok(c) if c.set.len() == c.claimed_size => {}
                Ok(c) => failures.push(format!("{args:?}: size {} != {}", c.set.len(), c.claimed_size)),
                Err(e) => failures.push(format!("{args:?}: {e}")),
            }
        }
        let detail = if failures.is_empty() {
            format!("{} instances verified at their closed-form size", params.len())
        } else {
            format!("{} of {} failed, first: {}", failures.len(), params.len(), failures[0])
        };
        rec.check(family.tag(), failures.is_empty(), detail);
    }
}

// ---- grid layouts ----

fn layout(rec: &mut Recorder, c: Construction, expected: usize) -> Result<()> {
    let grid = render_grid(&c.graph, &c.set)?;
    let stars = grid.matches('*').count();
    let ok = c.set.len() == expected && stars == expected && c.verify()?;
    let p: Vec<String> = c.params.values().map(|v| v.to_string()).collect();
    rec.check(
        format!("{}({})", c.family, p.join(",")),
        ok,
        format!("size {}, {stars} stars, expected {expected}", c.set.len()),
    );
    Ok(())
}

fn grid_layouts(rec: &mut Recorder) -> Result<()> {
    layout(rec, constructions::mon_cycle_complete(7, 9, 6)?, 32)?;
    layout(rec, constructions::mon_cycle_complete(8, 8, 7)?, 40)?;
    layout(rec, constructions::dyn_cycle_complete_t(8, 10, 5)?, 24)?;
    layout(rec, constructions::dyn_cycle_complete_t(9, 8, 5)?, 27)?;
    Ok(())
}

// ---- exactness ----

fn exactness(rec: &mut Recorder) -> Result<()> {
    let c = |n| cycle(n);
    let k = |n| complete(n);
    // (label, first factor, second factor, t, dynamo?, claimed)
    let cases: Vec<(&str, Graph, Graph, u32, bool, usize)> = vec![
        ("mon_2(C3xC3)", c(3)?, c(3)?, 2, false, 3),
        ("mon_2(K2xK2)", k(2)?, k(2)?, 2, false, 2),
        ("mon_2(K3xK3)", k(3)?, k(3)?, 2, false, 3),
        ("dyn_2(C3xK3)", c(3)?, k(3)?, 2, true, 2),
        ("dyn_2(C4xK4)", c(4)?, k(4)?, 2, true, 3),
        ("dyn_2(C5xK5)", c(5)?, k(5)?, 2, true, 3),
        ("dyn_3(C3xK3)", c(3)?, k(3)?, 3, true, 4),
        ("dyn_4(C3xK3)", c(3)?, k(3)?, 4, true, 6),
        ("dyn_2(K3xK3)", k(3)?, k(3)?, 2, true, 2),
        ("dyn_3(K3xK3)", k(3)?, k(3)?, 3, true, 4),
        ("dyn_4(K3xK3)", k(3)?, k(3)?, 4, true, 6),
        ("dyn_5(K2xK5)", k(2)?, k(5)?, 5, true, 8),
    ];
    for (label, g, h, t, dynamo, claimed) in cases {
        let prod = cartesian_product(&g, &h)?;
        let tau = ThresholdAssignment::constant(&prod, t)?;
        let opt = exact_solve(&prod, &tau, dynamo)?;
        rec.check(label, opt == claimed, format!("solver {opt}, claimed {claimed}"));
    }
    Ok(())
}

// ---- sandwich ----

/// A connected induced subgraph of `g` on 3 to 5 vertices with minimum
/// degree at least `t`, found by growing breadth-first balls and falling
/// back to scanning vertex subsets.
fn small_factor(g: &Graph, t: usize) -> Option<Graph> {
    let n = g.vertex_count();
    for size in (3..=5.min(n)).rev() {
        for start in 0..n {
            let mut ball = vec![start];
            let mut i = 0;
            while ball.len() < size && i < ball.len() {
                for &w in g.neighbors(ball[i]) {
                    if ball.len() < size && !ball.contains(&w) {
                        ball.push(w);
                    }
                }
                i += 1;
            }
            let f = g.induced(&ball);
            if ball.len() == size && f.is_connected() && f.min_degree() >= Some(t) {
                return Some(f);
            }
        }
    }
    let mut found = None;
    for size in (3..=5.min(n)).rev() {
        crate::solver::for_each_subset(n, size, |s| {
            let f = g.induced(s);
            if f.is_connected() && f.min_degree() >= Some(t) {
                found = Some(f);
                return false;
            }
            true
        });
        if found.is_some() {
            break;
        }
    }
    found
}

fn sandwich_product(
    rec: &mut Recorder,
    label: String,
    prod: &Graph,
    t: usize,
    reports: Vec<BoundReport>,
) -> Result<()> {
    let tau = ThresholdAssignment::constant(prod, t as u32)?;
    let opt = exact_solve(prod, &tau, true)?;
    for rep in reports.into_iter().filter(|r| r.applicable) {
        rec.check(
            format!("{label} {}", rep.name),
            rep.admits(opt),
            format!("optimum {opt}, {rep}"),
        );
    }
    Ok(())
}

fn sandwich(rec: &mut Recorder, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut graphs = 0;
    while graphs < 50 {
        let n = rng.gen_range(6..=12);
        let g = random_connected(n, rng.gen_range(0.2..0.7), rng)?;
        let delta = g.min_degree().unwrap_or(0);
        let t = rng.gen_range(1..=3usize);
        if t > delta {
            continue;
        }
        graphs += 1;
        let tau = ThresholdAssignment::constant(&g, t as u32)?;
        let mon = exact_solve(&g, &tau, false)?;
        let dynamo = exact_solve(&g, &tau, true)?;
        // every t-monopoly is a t-dynamo
        rec.check(
            format!("G{graphs} (n={n}, t={t}) dyn <= mon"),
            dynamo <= mon,
            format!("dyn {dynamo}, mon {mon}"),
        );

        let Some(f) = small_factor(&g, t) else {
            rec.check(format!("G{graphs} factor"), true, "no small factor with min degree >= t; products skipped");
            continue;
        };
        let f_tau = ThresholdAssignment::constant(&f, t as u32)?;
        let d = exact_solve(&f, &f_tau, true)?;
        let fv = f.vertex_count();
        let tag = format!("G{graphs} F{fv} t={t} d={d}");

        // F x C_3 (at most 15 vertices)
        if t >= 2 {
            let prod = cartesian_product(&f, &cycle(3)?)?;
            let mut reps = vec![bounds::dyn_product_cycle_ub(d, 3, t)?];
            if t <= 2 {
                let dh = exact_solve(&cycle(3)?, &ThresholdAssignment::constant(&cycle(3)?, t as u32)?, true)?;
                reps.push(bounds::dyn_product_naive_ub(d, dh)?);
            }
            sandwich_product(rec, format!("{tag} FxC3"), &prod, t, reps)?;
        }

        // F x K_m for every m keeping the product within 16 vertices
        for m in 2..=16 / fv {
            let km = complete(m)?;
            let prod = cartesian_product(&f, &km)?;
            let mut reps = Vec::new();
            if t >= 2 && d + 1 >= t {
                reps.push(bounds::dyn_product_complete_ub(d, t)?);
            }
            if t < m {
                // any t vertices of K_m form a minimum t-dynamo, inducing K_t
                reps.push(bounds::dyn_product_naive_ub(d, t)?);
                if t >= 3 && d <= t {
                    reps.push(bounds::dyn_product_improved_ub(d, t, t)?);
                }
                if t >= 3 && d + 1 >= t {
                    reps.push(bounds::dyn_product_clique_corollary_ub(d, t)?);
                }
            }
            sandwich_product(rec, format!("{tag} FxK{m}"), &prod, t, reps)?;
        }
    }
    Ok(())
}

// ---- threshold decrement ----

fn threshold_decrement(rec: &mut Recorder, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut graphs = 0;
    while graphs < 30 {
        let n = rng.gen_range(5..=12);
        let g = random_connected(n, rng.gen_range(0.3..0.7), rng)?;
        if g.min_degree() < Some(2) {
            continue;
        }
        graphs += 1;
        let values = (0..n).map(|v| rng.gen_range(2..=g.degree(v)) as u32).collect();
        let tau = ThresholdAssignment::explicit(&g, values)?;
        let lowered = tau.decremented();
        let best = min_dynamo(&g, &tau, Budget::unlimited())?;
        let d = best.witness;
        let mut bad = Vec::new();
        for v in d.iter() {
            if !is_dynamic_monopoly(&g, &lowered, &d.without(v))? {
                bad.push(v);
            }
        }
        let lower_opt = exact_solve(&g, &lowered, true)?;
        rec.check(
            format!("H{graphs} (n={n})"),
            bad.is_empty() && lower_opt < d.len(),
            format!(
                "dyn_tau {}, dyn_(tau-1) {lower_opt}, failing removals {bad:?}",
                d.len()
            ),
        );
    }
    Ok(())
}

// ---- line graphs ----

fn line_graphs(rec: &mut Recorder) -> Result<()> {
    for n in 1..=5 {
        let l = line_graph(&complete_bipartite(n, n)?)?;
        let p = cartesian_product(&complete(n)?, &complete(n)?)?;
        let same = l.vertex_count() == p.vertex_count()
            && l.edge_count() == p.edge_count()
            && l.degree_sequence() == p.degree_sequence();
        rec.check(
            format!("L(K{n},{n}) ~ K{n}xK{n}"),
            same,
            format!("{} vertices, {} edges", l.vertex_count(), l.edge_count()),
        );
    }
    let l = line_graph(&complete_bipartite(3, 3)?)?;
    let p = cartesian_product(&complete(3)?, &complete(3)?)?;
    let on_line = exact_solve(&l, &ThresholdAssignment::simple_majority(&l)?, false)?;
    let on_product = exact_solve(&p, &ThresholdAssignment::simple_majority(&p)?, false)?;
    let lb = bounds::line_graph_majority_lb(6, 3)?;
    rec.check(
        "mo(L(K3,3)) = mo(K3xK3) >= bound",
        on_line == on_product && lb.admits(on_line) && lb.value == 3,
        format!("line {on_line}, product {on_product}, {lb}"),
    );
    Ok(())
}

// ---- bound formulas ----

fn bound_regression(rec: &mut Recorder) -> Result<()> {
    let bi = bounds::biregular_line_lb(3, 3, 3, 3, 4)?;
    let stair = constructions::complete_complete_value(4);
    rec.check(
        "biregular K3xK3 t=4",
        bi.applicable && bi.value == 6 && stair == 6,
        format!("{bi}, staircase {stair}"),
    );
    let reg = bounds::regular_bipartite_line_lb(6, 3, 2)?;
    let l = line_graph(&complete_bipartite(3, 3)?)?;
    let opt = exact_solve(&l, &ThresholdAssignment::constant(&l, 2)?, true)?;
    rec.check(
        "regular bipartite (6,3,2)",
        reg.value == 2 && reg.admits(opt),
        format!("{reg}, dyn_2(L(K3,3)) = {opt}"),
    );
    Ok(())
}

// ---- engine ----

fn engine_properties(rec: &mut Recorder, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut sync_ok = 0;
    let mut mono_ok = 0;
    let mut first_failure = None;
    for i in 0..100 {
        let n = rng.gen_range(2..=14);
        let g = random_connected(n, rng.gen_range(0.1..0.6), rng)?;
        let values = (0..n).map(|v| rng.gen_range(1..=g.degree(v)) as u32).collect();
        let tau = ThresholdAssignment::explicit(&g, values)?;
        let seed: VertexSet = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
        let bigger = seed.union(&(0..n).filter(|_| rng.gen_bool(0.2)).collect());
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);

        let sync = activate(&g, &tau, &seed)?.activated;
        let asynchronous = fixed_point_in_order(&g, &tau, &seed, &order)?;
        if sync == asynchronous {
            sync_ok += 1;
        } else {
            first_failure.get_or_insert(format!("triple {i}: sync/async differ"));
        }
        if sync.is_subset(&activate(&g, &tau, &bigger)?.activated) {
            mono_ok += 1;
        } else {
            first_failure.get_or_insert(format!("triple {i}: monotonicity"));
        }
    }
    rec.check(
        "synchronous = asynchronous fixed point",
        sync_ok == 100,
        format!("{sync_ok}/100 triples agree"),
    );
    rec.check(
        "seed monotonicity",
        mono_ok == 100,
        format!("{mono_ok}/100 triples{}", first_failure.map(|f| format!(", {f}")).unwrap_or_default()),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_round_trip() {
        for b in Bundle::ALL {
            assert_eq!(b.tag().parse::<Bundle>().unwrap(), b);
        }
        assert!("all".parse::<Bundle>().is_err());
    }

    #[test]
    fn quick_bundles_pass() {
        for b in [Bundle::GridLayouts, Bundle::LineGraph, Bundle::BoundRegression, Bundle::Engine] {
            let report = run(b, DEFAULT_SEED).unwrap();
            assert!(report.passed(), "{b}: {:?}", report.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn factors_respect_min_degree() {
        let g = cartesian_product(&cycle(3).unwrap(), &complete(3).unwrap()).unwrap();
        let f = small_factor(&g, 2).unwrap();
        assert!(f.is_connected() && f.min_degree() >= Some(2));
        assert!(small_factor(&cycle(8).unwrap(), 3).is_none());
    }
}
