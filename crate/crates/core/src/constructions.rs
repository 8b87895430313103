//! Explicit monopolies and dynamos on product graphs.
//!
//! Every builder returns the instance graph, its thresholds and the vertex
//! set together with the closed-form size the set is supposed to have. The
//! set is verified with the engine before it is returned; a set that fails
//! its own check is reported as [`Error::ConstructionFailed`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::engine::{is_dynamic_monopoly, is_static_monopoly, VertexSet};
use crate::error::{Error, Result};
use crate::graph::{cartesian_product, complete, cycle, star, Graph};
use crate::thresholds::ThresholdAssignment;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetKind {
    Monopoly,
    Dynamo,
}

impl fmt::Display for SetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SetKind::Monopoly => "monopoly",
            SetKind::Dynamo => "dynamo",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Mon2Torus,
    MonCycleComplete,
    MonDiag,
    MonBlockDiag,
    MonBlockComplement,
    MonCirculant,
    DynCycleCompleteT2,
    DynCycleCompleteT3,
    DynCycleComplete,
    DynStarStar,
    DynCompleteComplete,
    DynCompleteCompleteSmallM,
}

impl Family {
    pub const ALL: [Family; 12] = [
        Family::Mon2Torus,
        Family::MonCycleComplete,
        Family::MonDiag,
        Family::MonBlockDiag,
        Family::MonBlockComplement,
        Family::MonCirculant,
        Family::DynCycleCompleteT2,
        Family::DynCycleCompleteT3,
        Family::DynCycleComplete,
        Family::DynStarStar,
        Family::DynCompleteComplete,
        Family::DynCompleteCompleteSmallM,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::Mon2Torus => "mon2-torus",
            Family::MonCycleComplete => "mon-cycle-complete",
            Family::MonDiag => "mon-diag",
            Family::MonBlockDiag => "mon-block-diag",
            Family::MonBlockComplement => "mon-block-complement",
            Family::MonCirculant => "mon-circulant",
            Family::DynCycleCompleteT2 => "dyn-cycle-complete-t2",
            Family::DynCycleCompleteT3 => "dyn-cycle-complete-t3",
            Family::DynCycleComplete => "dyn-cycle-complete",
            Family::DynStarStar => "dyn-star-star",
            Family::DynCompleteComplete => "dyn-complete-complete",
            Family::DynCompleteCompleteSmallM => "dyn-complete-complete-small-m",
        }
    }

    /// Parameter names, in the order [`build`] expects them.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            Family::Mon2Torus | Family::MonDiag | Family::MonCirculant => &["n"],
            Family::DynCycleCompleteT2 | Family::DynCycleCompleteT3 => &["n"],
            Family::MonBlockDiag | Family::MonBlockComplement => &["k", "t"],
            Family::DynStarStar => &["n", "t"],
            Family::MonCycleComplete
            | Family::DynCycleComplete
            | Family::DynCompleteComplete
            | Family::DynCompleteCompleteSmallM => &["m", "n", "t"],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| Error::invalid(format!("unknown family {s:?}")))
    }
}

#[derive(Debug, Clone)]
pub struct Construction {
    pub family: Family,
    pub params: BTreeMap<&'static str, usize>,
    pub graph: Graph,
    pub thresholds: ThresholdAssignment,
    pub set: VertexSet,
    pub claimed_size: usize,
    pub kind: SetKind,
    /// Whether `claimed_size` is the exact optimum rather than an upper bound.
    pub exact: bool,
}

impl Construction {
    /// Re-runs the engine predicate matching `kind`.
    pub fn verify(&self) -> Result<bool> {
        match self.kind {
            SetKind::Monopoly => Ok(is_static_monopoly(&self.graph, &self.thresholds, &self.set)?.holds),
            SetKind::Dynamo => is_dynamic_monopoly(&self.graph, &self.thresholds, &self.set),
        }
    }
}

/// Builds `family` from parameters given in [`Family::params`] order.
pub fn build(family: Family, args: &[usize]) -> Result<Construction> {
    let names = family.params();
    if args.len() != names.len() {
        return Err(Error::invalid(format!(
            "{family} takes parameters {names:?}, got {} values",
            args.len()
        )));
    }
    match family {
        Family::Mon2Torus => mon2_torus(args[0]),
        Family::MonCycleComplete => mon_cycle_complete(args[0], args[1], args[2]),
        Family::MonDiag => mon_diag(args[0]),
        Family::MonBlockDiag => mon_block_diag(args[0], args[1]),
        Family::MonBlockComplement => mon_block_complement(args[0], args[1]),
        Family::MonCirculant => mon_circulant(args[0]),
        Family::DynCycleCompleteT2 => dyn_cycle_complete_t2(args[0]),
        Family::DynCycleCompleteT3 => dyn_cycle_complete_t3(args[0]),
        Family::DynCycleComplete => dyn_cycle_complete_t(args[0], args[1], args[2]),
        Family::DynStarStar => dyn_star_star(args[0], args[1]),
        Family::DynCompleteComplete => dyn_complete_complete(args[0], args[1], args[2]),
        Family::DynCompleteCompleteSmallM => dyn_complete_complete_small_m(args[0], args[1], args[2]),
    }
}

struct Draft {
    family: Family,
    params: Vec<usize>,
    graph: Graph,
    thresholds: ThresholdAssignment,
    kind: SetKind,
    claimed_size: usize,
    exact: bool,
}

impl Draft {
    fn finish(self, cells: impl IntoIterator<Item = (usize, usize)>) -> Result<Construction> {
        let ids = cells
            .into_iter()
            .map(|(r, c)| self.graph.at(r, c))
            .collect::<Result<Vec<_>>>()?;
        let set = VertexSet::new(ids);
        let construction = Construction {
            family: self.family,
            params: self.family.params().iter().copied().zip(self.params).collect(),
            graph: self.graph,
            thresholds: self.thresholds,
            set,
            claimed_size: self.claimed_size,
            kind: self.kind,
            exact: self.exact,
        };
        if construction.set.len() != construction.claimed_size || !construction.verify()? {
            return Err(Error::ConstructionFailed {
                family: construction.family.tag().to_string(),
                kind: construction.kind.to_string(),
            });
        }
        Ok(construction)
    }
}

fn threshold(t: usize) -> u32 {
    u32::try_from(t).unwrap_or(u32::MAX)
}

fn leftmost(row: usize, count: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=count).map(move |c| (row, c))
}

fn rightmost(row: usize, cols: usize, count: usize) -> impl Iterator<Item = (usize, usize)> {
    (cols + 1 - count..=cols).map(move |c| (row, c))
}

/// 2-monopoly of the torus C_n □ C_n built from anti-diagonal stripes.
///
/// For `n ≡ 0 (mod 3)` the stripes `i + j ≡ 1` close up around the torus.
/// Otherwise the wrap-around seam at row `n` / column `n` is patched with
/// every third vertex of the last row and column.
pub fn mon2_torus(n: usize) -> Result<Construction> {
    if n < 3 {
        return Err(Error::invalid(format!("mon2-torus needs n >= 3, got {n}")));
    }
    let graph = cartesian_product(&cycle(n)?, &cycle(n)?)?;
    let thresholds = ThresholdAssignment::constant(&graph, 2)?;
    let grid = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j)));
    let (cells, claimed_size): (Vec<_>, usize) = match n % 3 {
        0 => (grid.filter(|(i, j)| (i + j) % 3 == 1).collect(), n * n / 3),
        1 => {
            let seam = (1..=n - 3).step_by(3);
            let cells = grid
                .filter(|(i, j)| (i + j) % 3 == 1)
                .chain(seam.clone().map(|i| (i, n)))
                .chain(seam.map(|j| (n, j)))
                .collect();
            (cells, (n - 1) * (n + 3) / 3)
        }
        _ => {
            let seam = (3..=n - 2).step_by(3);
            let cells = grid
                .filter(|(i, j)| (i + j) % 3 == 0)
                .chain(seam.clone().map(|i| (i, n)))
                .chain(seam.map(|j| (n, j)))
                .collect();
            (cells, (n + 1) * (n + 1) / 3 - 1)
        }
    };
    Draft {
        family: Family::Mon2Torus,
        params: vec![n],
        graph,
        thresholds,
        kind: SetKind::Monopoly,
        claimed_size,
        exact: n % 3 == 0,
    }
    .finish(cells)
}

/// Which branch of the C_m □ K_n monopoly applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleCompleteRegime {
    /// `t - 1 <= n <= 2(t - 2)`
    Narrow,
    /// `2(t - 2) + 1 <= n <= 2t`
    Balanced,
    /// `n > 2t`
    Wide,
}

pub fn cycle_complete_regime(n: usize, t: usize) -> Option<CycleCompleteRegime> {
    if t == 0 || n + 1 < t {
        None
    } else if t >= 3 && n <= 2 * (t - 2) {
        Some(CycleCompleteRegime::Narrow)
    } else if n <= 2 * t {
        Some(CycleCompleteRegime::Balanced)
    } else {
        Some(CycleCompleteRegime::Wide)
    }
}

/// t-monopoly of C_m □ K_n. Rows alternate between a block on the left and
/// a block on the right so that every missing vertex sees both of its
/// column neighbours.
///
/// Odd `m` in the narrow regime additionally needs `2n >= 3(t - 2)`: below
/// that the claimed size is smaller than `m(t - 2)`, the least number of
/// members any t-monopoly must have (each row needs `t - 2`).
pub fn mon_cycle_complete(m: usize, n: usize, t: usize) -> Result<Construction> {
    let family = Family::MonCycleComplete;
    if m < 3 || n < 1 {
        return Err(Error::invalid(format!(
            "mon-cycle-complete needs m >= 3 and n >= 1, got m={m}, n={n}"
        )));
    }
    let regime = cycle_complete_regime(n, t).ok_or_else(|| {
        Error::regime(
            family.tag(),
            format!("t={t} with n={n} lies below the nearest regime t-1 <= n <= 2(t-2), which needs n >= t-1"),
        )
    })?;
    let graph = cartesian_product(&cycle(m)?, &complete(n)?)?;
    let thresholds = ThresholdAssignment::constant(&graph, threshold(t))?;
    let odd = m % 2 == 1;
    let mut cells: Vec<(usize, usize)> = Vec::new();
    let (claimed_size, exact) = match regime {
        CycleCompleteRegime::Narrow => {
            let b = t - 2;
            if odd && 2 * n < 3 * b {
                return Err(Error::regime(
                    family.tag(),
                    format!(
                        "odd m with t-1 <= n <= 2(t-2) needs 2n >= 3(t-2); the claimed size {} is below the lower bound m(t-2) = {}",
                        (m - 3) * b + 2 * n,
                        m * b
                    ),
                ));
            }
            let body = if odd { m - 1 } else { m };
            for i in 1..=body {
                if i % 2 == 1 {
                    cells.extend(leftmost(i, b));
                } else {
                    cells.extend(rightmost(i, n, b));
                }
            }
            if odd {
                let w = n + 2 - t;
                cells.extend(leftmost(m, w));
                cells.extend(rightmost(m, n, w));
                ((m - 3) * b + 2 * n, false)
            } else {
                (m * b, true)
            }
        }
        CycleCompleteRegime::Balanced => {
            let (left, right) = (n.div_ceil(2), n / 2);
            let body = if odd { m - 1 } else { m };
            for i in 1..=body {
                if i % 2 == 1 {
                    cells.extend(leftmost(i, left));
                } else {
                    cells.extend(rightmost(i, n, right));
                }
            }
            if odd {
                cells.extend(leftmost(m, t - 1));
                ((m - 1) * n / 2 + t - 1, true)
            } else {
                (m * n / 2, true)
            }
        }
        CycleCompleteRegime::Wide => {
            for i in 1..=m {
                cells.extend(leftmost(i, t));
            }
            (m * t, false)
        }
    };
    Draft {
        family,
        params: vec![m, n, t],
        graph,
        thresholds,
        kind: SetKind::Monopoly,
        claimed_size,
        exact,
    }
    .finish(cells)
}

/// The main diagonal of K_n □ K_n, a 2-monopoly.
pub fn mon_diag(n: usize) -> Result<Construction> {
    if n < 2 {
        return Err(Error::invalid(format!("mon-diag needs n >= 2, got {n}")));
    }
    let graph = cartesian_product(&complete(n)?, &complete(n)?)?;
    let thresholds = ThresholdAssignment::constant(&graph, 2)?;
    Draft {
        family: Family::MonDiag,
        params: vec![n],
        graph,
        thresholds,
        kind: SetKind::Monopoly,
        claimed_size: n,
        exact: true,
    }
    .finish((1..=n).map(|i| (i, i)))
}

fn block_params(family: Family, k: usize, t: usize) -> Result<usize> {
    if k < 1 || t < 2 || t % 2 == 1 {
        return Err(Error::invalid(format!(
            "{family} needs k >= 1 and an even t >= 2, got k={k}, t={t}"
        )));
    }
    Ok(k * t / 2)
}

fn same_block(i: usize, j: usize, side: usize) -> bool {
    (i - 1) / side == (j - 1) / side
}

/// The `t/2 × t/2` blocks on the diagonal of K_n □ K_n, `n = k t / 2`.
pub fn mon_block_diag(k: usize, t: usize) -> Result<Construction> {
    let family = Family::MonBlockDiag;
    let n = block_params(family, k, t)?;
    let graph = cartesian_product(&complete(n)?, &complete(n)?)?;
    let thresholds = ThresholdAssignment::constant(&graph, threshold(t))?;
    let side = t / 2;
    let cells: Vec<_> = (1..=n)
        .flat_map(|i| (1..=n).map(move |j| (i, j)))
        .filter(|&(i, j)| same_block(i, j, side))
        .collect();
    Draft {
        family,
        params: vec![k, t],
        graph,
        thresholds,
        kind: SetKind::Monopoly,
        claimed_size: k * t * t / 4,
        exact: true,
    }
    .finish(cells)
}

/// Everything off the diagonal blocks of K_n □ K_n; a `(2n - t)`-monopoly.
pub fn mon_block_complement(k: usize, t: usize) -> Result<Construction> {
    let family = Family::MonBlockComplement;
    let n = block_params(family, k, t)?;
    let graph = cartesian_product(&complete(n)?, &complete(n)?)?;
    let thresholds = ThresholdAssignment::constant(&graph, threshold(2 * n - t))?;
    let side = t / 2;
    let cells: Vec<_> = (1..=n)
        .flat_map(|i| (1..=n).map(move |j| (i, j)))
        .filter(|&(i, j)| !same_block(i, j, side))
        .collect();
    Draft {
        family,
        params: vec![k, t],
        graph,
        thresholds,
        kind: SetKind::Monopoly,
        claimed_size: k * (k - 1) * t * t / 4,
        exact: true,
    }
    .finish(cells)
}

/// Circulant `(n-1)`-monopoly of K_n □ K_n for odd `n`: row `i` holds
/// columns `i+1, ..., i+(n-1)/2`, wrapping around.
pub fn mon_circulant(n: usize) -> Result<Construction> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::invalid(format!("mon-circulant needs an odd n >= 3, got {n}")));
    }
    let graph = cartesian_product(&complete(n)?, &complete(n)?)?;
    let thresholds = ThresholdAssignment::constant(&graph, threshold(n - 1))?;
    let half = (n - 1) / 2;
    let cells: Vec<_> = (1..=n)
        .flat_map(|i| (1..=half).map(move |s| (i, (i + s - 1) % n + 1)))
        .collect();
    Draft {
        family: Family::MonCirculant,
        params: vec![n],
        graph,
        thresholds,
        kind: SetKind::Monopoly,
        claimed_size: n * (n - 1) / 2,
        exact: true,
    }
    .finish(cells)
}

/// 2-dynamo of C_n □ K_n: odd diagonal vertices, plus `v_nn` for even `n`.
pub fn dyn_cycle_complete_t2(n: usize) -> Result<Construction> {
    if n < 3 {
        return Err(Error::invalid(format!("dyn-cycle-complete-t2 needs n >= 3, got {n}")));
    }
    let graph = cartesian_product(&cycle(n)?, &complete(n)?)?;
    let thresholds = ThresholdAssignment::constant(&graph, 2)?;
    let mut cells: Vec<_> = (1..=n).step_by(2).map(|i| (i, i)).collect();
    if n % 2 == 0 {
        cells.push((n, n));
    }
    Draft {
        family: Family::DynCycleCompleteT2,
        params: vec![n],
        graph,
        thresholds,
        kind: SetKind::Dynamo,
        claimed_size: n / 2 + 1,
        exact: true,
    }
    .finish(cells)
}

/// 3-dynamo of C_n □ K_n: the whole diagonal plus `v_2n`.
pub fn dyn_cycle_complete_t3(n: usize) -> Result<Construction> {
    if n < 3 {
        return Err(Error::invalid(format!("dyn-cycle-complete-t3 needs n >= 3, got {n}")));
    }
    let graph = cartesian_product(&cycle(n)?, &complete(n)?)?;
    let thresholds = ThresholdAssignment::constant(&graph, 3)?;
    let cells = (1..=n).map(|i| (i, i)).chain([(2, n)]);
    Draft {
        family: Family::DynCycleCompleteT3,
        params: vec![n],
        graph,
        thresholds,
        kind: SetKind::Dynamo,
        claimed_size: n + 1,
        exact: true,
    }
    .finish(cells)
}

/// t-dynamo of C_m □ K_n for `t >= 4`: `t - 2` vertices per row, on the left
/// in odd rows and on the right in even rows. For odd `m` the last row is
/// split into `⌈(t-2)/2⌉` on the left and `⌊(t-2)/2⌋` on the right.
pub fn dyn_cycle_complete_t(m: usize, n: usize, t: usize) -> Result<Construction> {
    let family = Family::DynCycleComplete;
    if m < 3 {
        return Err(Error::invalid(format!("{family} needs m >= 3, got {m}")));
    }
    if t < 4 || n + 1 < t {
        return Err(Error::regime(
            family.tag(),
            format!("needs t >= 4 and n >= t-1, got n={n}, t={t}"),
        ));
    }
    let graph = cartesian_product(&cycle(m)?, &complete(n)?)?;
    let thresholds = ThresholdAssignment::constant(&graph, threshold(t))?;
    let b = t - 2;
    let mut cells = Vec::new();
    for i in 1..=m {
        if i % 2 == 0 {
            cells.extend(rightmost(i, n, b));
        } else if m % 2 == 0 || i <= m - 2 {
            cells.extend(leftmost(i, b));
        }
    }
    if m % 2 == 1 {
        cells.extend(leftmost(m, b.div_ceil(2)));
        cells.extend(rightmost(m, n, b / 2));
    }
    Draft {
        family,
        params: vec![m, n, t],
        graph,
        thresholds,
        kind: SetKind::Dynamo,
        claimed_size: m * b,
        exact: true,
    }
    .finish(cells)
}

/// All leaf-by-leaf vertices of K_{1,n} □ K_{1,n}, a t-dynamo for `3 <= t <= n`.
///
/// Thresholds are constant `t` without the degree cap: the `n²` vertices of
/// degree two can never fire and must all be seeded.
pub fn dyn_star_star(n: usize, t: usize) -> Result<Construction> {
    let family = Family::DynStarStar;
    if n < 3 || t < 3 || t > n {
        return Err(Error::regime(
            family.tag(),
            format!("needs n >= 3 and 3 <= t <= n, got n={n}, t={t}"),
        ));
    }
    let graph = cartesian_product(&star(n)?, &star(n)?)?;
    let thresholds = ThresholdAssignment::constant_unbounded(&graph, threshold(t))?;
    let cells: Vec<_> = (2..=n + 1).flat_map(|i| (2..=n + 1).map(move |j| (i, j))).collect();
    Draft {
        family,
        params: vec![n, t],
        graph,
        thresholds,
        kind: SetKind::Dynamo,
        claimed_size: n * n,
        exact: true,
    }
    .finish(cells)
}

/// Closed-form `dyn_t(K_m □ K_n)` when the staircase fits.
pub fn complete_complete_value(t: usize) -> usize {
    let h = t / 2;
    if t % 2 == 1 {
        (h + 1) * (h + 1)
    } else {
        h * (h + 1)
    }
}

/// Staircase t-dynamo of K_m □ K_n: descending runs ending at the last
/// column in the top rows, and descending runs ending at the last row in the
/// first columns. Requires `t <= m + n - 2` and `min(m, n) >= ⌈t/2⌉`.
pub fn dyn_complete_complete(m: usize, n: usize, t: usize) -> Result<Construction> {
    let family = Family::DynCompleteComplete;
    if m < 1 || n < 1 || t < 1 {
        return Err(Error::invalid(format!("{family} needs m, n, t >= 1")));
    }
    if t + 2 > m + n {
        return Err(Error::regime(family.tag(), format!("needs t <= m+n-2, got m={m}, n={n}, t={t}")));
    }
    if m.min(n) < t.div_ceil(2) {
        return Err(Error::regime(
            family.tag(),
            format!("staircase needs min(m, n) >= ceil(t/2) = {}, got m={m}, n={n}", t.div_ceil(2)),
        ));
    }
    let graph = cartesian_product(&complete(m)?, &complete(n)?)?;
    let thresholds = ThresholdAssignment::constant(&graph, threshold(t))?;
    let h = t / 2;
    let (top_rows, shift) = if t % 2 == 1 { (h + 1, 1) } else { (h, 0) };
    let mut cells = Vec::new();
    for i in 1..=top_rows {
        let from = n + i - h - shift;
        cells.extend((from..=n).map(|c| (i, c)));
    }
    for j in 1..=h {
        cells.extend((m + j - h..=m).map(|r| (r, j)));
    }
    Draft {
        family,
        params: vec![m, n, t],
        graph,
        thresholds,
        kind: SetKind::Dynamo,
        claimed_size: complete_complete_value(t),
        exact: true,
    }
    .finish(cells)
}

/// t-dynamo of K_m □ K_n of size `m(t - m + 1)` for `2m < t` and
/// `n > t - m + 1`. Column `j < m` holds its bottom `m - j` vertices, row
/// `i < m` its rightmost `t - m + 2 - i`, and the last row its rightmost
/// `t - 2m + 2`.
pub fn dyn_complete_complete_small_m(m: usize, n: usize, t: usize) -> Result<Construction> {
    let family = Family::DynCompleteCompleteSmallM;
    if m < 1 || 2 * m >= t || n + m < t + 2 {
        return Err(Error::regime(
            family.tag(),
            format!("needs m >= 1, m < t/2 and n > t-m+1, got m={m}, n={n}, t={t}"),
        ));
    }
    let graph = cartesian_product(&complete(m)?, &complete(n)?)?;
    let thresholds = ThresholdAssignment::constant(&graph, threshold(t))?;
    let mut cells = Vec::new();
    for j in 1..m {
        cells.extend((j + 1..=m).map(|r| (r, j)));
    }
    for i in 1..m {
        cells.extend(rightmost(i, n, t - m + 2 - i));
    }
    cells.extend(rightmost(m, n, t + 2 - 2 * m));
    Draft {
        family,
        params: vec![m, n, t],
        graph,
        thresholds,
        kind: SetKind::Dynamo,
        claimed_size: m * (t - m + 1),
        exact: true,
    }
    .finish(cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coords(c: &Construction) -> Vec<(usize, usize)> {
        c.set
            .iter()
            .map(|v| {
                let g = c.graph.coord_of(v).unwrap();
                (g.row, g.col)
            })
            .collect()
    }

    #[test]
    fn torus_sizes() {
        assert_eq!(mon2_torus(3).unwrap().set.len(), 3);
        assert_eq!(mon2_torus(4).unwrap().set.len(), 7);
        assert_eq!(mon2_torus(5).unwrap().set.len(), 11);
        assert!(mon2_torus(2).is_err());
        assert!(mon2_torus(6).unwrap().exact);
        assert!(!mon2_torus(7).unwrap().exact);
    }

    #[test]
    fn cycle_complete_grid_sizes() {
        let up = mon_cycle_complete(7, 9, 6).unwrap();
        assert_eq!(up.set.len(), 32);
        let down = mon_cycle_complete(8, 8, 7).unwrap();
        assert_eq!(down.set.len(), 40);
        let wide = mon_cycle_complete(4, 10, 4).unwrap();
        assert_eq!(wide.set.len(), 16);
        assert!(!wide.exact);
    }

    #[test]
    fn cycle_complete_regime_errors() {
        assert!(matches!(mon_cycle_complete(4, 3, 5), Err(Error::UnsupportedRegime { .. })));
        // odd m, n = t - 1 = 6: claimed 2n + 0 = 12 < m(t-2) = 15
        assert!(matches!(mon_cycle_complete(3, 6, 7), Err(Error::UnsupportedRegime { .. })));
        assert!(mon_cycle_complete(3, 8, 7).is_ok());
        assert!(mon_cycle_complete(2, 8, 7).is_err());
    }

    #[test]
    fn complete_square_monopolies() {
        assert_eq!(mon_diag(2).unwrap().set.len(), 2);
        let d5 = mon_diag(5).unwrap();
        let mask = d5.set.mask(25);
        for v in (0..25).filter(|&v| !mask[v]) {
            let inside = d5.graph.neighbors(v).iter().filter(|&&w| mask[w]).count();
            assert_eq!(inside, 2);
        }
        assert!(mon_diag(1).is_err());

        let b = mon_block_diag(2, 2).unwrap();
        assert_eq!(coords(&b), vec![(1, 1), (2, 2)]);
        assert!(matches!(mon_block_diag(1, 4), Err(Error::ThresholdExceedsDegree { .. })));
        assert!(mon_block_diag(2, 3).is_err());
        assert_eq!(mon_block_diag(3, 2).unwrap().set, mon_diag(3).unwrap().set);

        let c = mon_block_complement(2, 2).unwrap();
        assert_eq!(coords(&c), vec![(1, 2), (2, 1)]);
        assert_eq!(c.thresholds.as_constant(), Some(2));
        let c3 = mon_block_complement(3, 2).unwrap();
        assert_eq!((c3.set.len(), c3.thresholds.as_constant()), (6, Some(4)));
        let k = 3;
        let union = mon_block_complement(k, 4).unwrap().set.union(&mon_block_diag(k, 4).unwrap().set);
        assert_eq!(union, VertexSet::full(36));

        assert_eq!(mon_circulant(3).unwrap().set.len(), 3);
        assert_eq!(mon_circulant(5).unwrap().set.len(), 10);
        assert!(mon_circulant(4).is_err());
    }

    #[test]
    fn cycle_complete_dynamos() {
        let d5 = dyn_cycle_complete_t2(5).unwrap();
        assert_eq!(coords(&d5), vec![(1, 1), (3, 3), (5, 5)]);
        let d4 = dyn_cycle_complete_t2(4).unwrap();
        assert_eq!(coords(&d4), vec![(1, 1), (3, 3), (4, 4)]);
        assert_eq!(dyn_cycle_complete_t2(3).unwrap().set.len(), 2);

        assert_eq!(dyn_cycle_complete_t3(3).unwrap().set.len(), 4);
        let t3 = dyn_cycle_complete_t3(5).unwrap();
        assert_eq!(t3.set.len(), 6);
        let extra = t3.graph.at(2, 5).unwrap();
        assert!(!is_dynamic_monopoly(&t3.graph, &t3.thresholds, &t3.set.without(extra)).unwrap());

        assert_eq!(dyn_cycle_complete_t(8, 10, 5).unwrap().set.len(), 24);
        assert_eq!(dyn_cycle_complete_t(9, 8, 5).unwrap().set.len(), 27);
        assert_eq!(dyn_cycle_complete_t(4, 4, 4).unwrap().set.len(), 8);
        assert!(dyn_cycle_complete_t(4, 2, 4).is_err());
        assert!(dyn_cycle_complete_t(4, 4, 3).is_err());
    }

    #[test]
    fn star_products() {
        let s = dyn_star_star(3, 3).unwrap();
        assert_eq!(s.set.len(), 9);
        assert_eq!(dyn_star_star(4, 3).unwrap().set.len(), 16);
        assert!(dyn_star_star(3, 4).is_err());
        assert!(dyn_star_star(3, 2).is_err());
    }

    #[test]
    fn complete_complete_dynamos() {
        assert_eq!(dyn_complete_complete(3, 3, 3).unwrap().set.len(), 4);
        assert_eq!(dyn_complete_complete(3, 3, 4).unwrap().set.len(), 6);
        assert_eq!(dyn_complete_complete(3, 3, 2).unwrap().set.len(), 2);
        assert!(dyn_complete_complete(3, 3, 5).is_err());
        assert!(dyn_complete_complete(2, 6, 5).is_err());

        assert_eq!(dyn_complete_complete_small_m(2, 5, 5).unwrap().set.len(), 8);
        assert_eq!(dyn_complete_complete_small_m(2, 6, 5).unwrap().set.len(), 8);
        assert_eq!(dyn_complete_complete_small_m(1, 4, 3).unwrap().set.len(), 3);
        assert!(dyn_complete_complete_small_m(2, 4, 5).is_err());
        assert!(dyn_complete_complete_small_m(2, 6, 4).is_err());
    }

    #[test]
    fn build_dispatch() {
        let c = build(Family::DynCycleComplete, &[8, 10, 5]).unwrap();
        assert_eq!(c.params["m"], 8);
        assert!(build(Family::MonDiag, &[3, 4]).is_err());
        for f in Family::ALL {
            assert_eq!(f.tag().parse::<Family>().unwrap(), f);
        }
        assert!("nope".parse::<Family>().is_err());
    }
}
