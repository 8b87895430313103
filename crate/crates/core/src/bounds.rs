//! Closed-form bounds on monopoly and dynamo sizes.
//!
//! Each operation checks its preconditions, evaluates the formula in exact
//! rational arithmetic and reports an integer certificate next to it:
//! the ceiling for lower bounds and the floor for upper bounds.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Lower,
    Upper,
    /// Matching lower and upper bound.
    Exact,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub direction: Direction,
    /// The formula's value before rounding.
    #[serde(with = "ratio_text")]
    pub exact: Rational,
    /// Integer certificate: `ceil(exact)` for lower bounds, `floor(exact)` otherwise.
    pub value: i64,
    pub parameters: BTreeMap<String, i64>,
    pub applicable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// Assumptions the caller vouches for; nothing here is checked.
    #[serde(default)]
    pub hypotheses: Vec<String>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl BoundReport {
    fn new(name: &str, direction: Direction, exact: Rational, parameters: &[(&str, i64)]) -> Self {
        let value = match direction {
            Direction::Lower => exact.ceil().to_integer(),
            Direction::Upper | Direction::Exact => exact.floor().to_integer(),
        };
        BoundReport {
            name: name.to_string(),
            direction,
            exact,
            value,
            parameters: parameters.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            applicable: true,
            reason: None,
            hypotheses: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn hypothesis(mut self, text: &str) -> Self {
        self.hypotheses.push(text.to_string());
        self
    }

    fn note(mut self, text: impl Into<String>) -> Self {
        self.notes.push(text.into());
        self
    }

    fn inapplicable(mut self, reason: impl Into<String>) -> Self {
        self.applicable = false;
        self.reason = Some(reason.into());
        self
    }

    /// Whether `optimum` is consistent with this bound. Inapplicable bounds
    /// are vacuously consistent.
    pub fn admits(&self, optimum: usize) -> bool {
        let opt = optimum as i64;
        !self.applicable
            || match self.direction {
                Direction::Lower => self.value <= opt,
                Direction::Upper => opt <= self.value,
                Direction::Exact => opt == self.value,
            }
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.direction {
            Direction::Lower => ">=",
            Direction::Upper => "<=",
            Direction::Exact => "==",
        };
        write!(f, "{} {rel} {} (exact {})", self.name, self.value, self.exact)?;
        if !self.applicable {
            write!(f, " [not applicable: {}]", self.reason.as_deref().unwrap_or(""))?;
        }
        Ok(())
    }
}

mod ratio_text {
    use super::Rational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(|_| D::Error::custom(format!("bad rational {text:?}")))
    }
}

fn int(v: usize) -> i64 {
    v as i64
}

fn r(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// `mo(L(G)) >= n(k-1)/4` for a k-regular graph G on n vertices, under
/// simple majority on the line graph.
pub fn line_graph_majority_lb(n: usize, k: usize) -> Result<BoundReport> {
    if n * k % 2 == 1 {
        return Err(Error::invalid(format!("no {k}-regular graph on {n} vertices: nk is odd")));
    }
    if k < 2 || n <= k {
        return Err(Error::invalid(format!(
            "need k >= 2 and n > k for a k-regular graph with a majority on its line graph, got n={n}, k={k}"
        )));
    }
    let (n, k) = (int(n), int(k));
    Ok(BoundReport::new(
        "line-graph-majority-lb",
        Direction::Lower,
        q(n * (k - 1), 4),
        &[("n", n), ("k", k)],
    ))
}

/// Upper bound on `dyn_t(G □ C_n)` with `d = dyn_t(G)`.
pub fn dyn_product_cycle_ub(d: usize, n: usize, t: usize) -> Result<BoundReport> {
    let name = "dyn-product-cycle-ub";
    if t < 2 {
        return Err(Error::regime(name, format!("needs t >= 2, got t={t}")));
    }
    if n < 3 || d < 1 {
        return Err(Error::invalid(format!("{name} needs n >= 3 and d >= 1, got n={n}, d={d}")));
    }
    let (d, n, t) = (int(d), int(n), int(t));
    let value = match t {
        2 => n + d - 2,
        3 => n * d - (n + d) + 2,
        _ => d + (n - 2) * (d - 1) + d - 2,
    };
    Ok(BoundReport::new(name, Direction::Upper, r(value), &[("d", d), ("n", n), ("t", t)])
        .hypothesis("G is connected and t <= min degree of G"))
}

/// Upper bound `td - (t² - 3t)/2 - d` on `dyn_t(G □ K_n)` with `d = dyn_t(G)`.
pub fn dyn_product_complete_ub(d: usize, t: usize) -> Result<BoundReport> {
    let name = "dyn-product-complete-ub";
    if t < 2 || d + 1 < t {
        return Err(Error::regime(name, format!("needs t >= 2 and d >= t-1, got d={d}, t={t}")));
    }
    let (d, t) = (int(d), int(t));
    let exact = r(t * d) - q(t * t - 3 * t, 2) - r(d);
    Ok(BoundReport::new(name, Direction::Upper, exact, &[("d", d), ("t", t)]).hypothesis("G is connected"))
}

/// `dyn_t(G □ H) <= dyn_t(G) dyn_t(H)`.
pub fn dyn_product_naive_ub(dg: usize, dh: usize) -> Result<BoundReport> {
    if dg < 1 || dh < 1 {
        return Err(Error::invalid(format!("dynamo sizes must be positive, got dg={dg}, dh={dh}")));
    }
    let (dg, dh) = (int(dg), int(dh));
    Ok(BoundReport::new(
        "dyn-product-naive-ub",
        Direction::Upper,
        r(dg * dh),
        &[("dg", dg), ("dh", dh)],
    ))
}

fn product_params(name: &str, dg: usize, dh: usize, t: usize) -> Result<()> {
    if dg < 1 || dh < 1 {
        return Err(Error::invalid(format!("dynamo sizes must be positive, got dg={dg}, dh={dh}")));
    }
    if t < 3 {
        return Err(Error::regime(name, format!("needs t >= 3, got t={t}")));
    }
    Ok(())
}

/// `dyn_t(G □ H) <= dg·dh - dh/2` when `dg <= dh` and some minimum dynamo of
/// H induces a subgraph without isolated vertices.
pub fn dyn_product_improved_ub(dg: usize, dh: usize, t: usize) -> Result<BoundReport> {
    let name = "dyn-product-improved-ub";
    product_params(name, dg, dh, t)?;
    if dg > dh {
        return Err(Error::regime(name, format!("needs dg <= dh, got dg={dg}, dh={dh}")));
    }
    let (dg, dh, t) = (int(dg), int(dh), int(t));
    let exact = r(dg * dh) - q(dh, 2);
    Ok(
        BoundReport::new(name, Direction::Upper, exact, &[("dg", dg), ("dh", dh), ("t", t)])
            .hypothesis("some minimum t-dynamo of H induces a subgraph with no isolated vertex"),
    )
}

/// `dyn_t(G □ H) <= dg·dh - dh` when a minimum dynamo of H induces a star.
/// Clamped to 1, the least size of any dynamo of a nonempty graph.
pub fn dyn_product_star_corollary_ub(dg: usize, dh: usize, t: usize) -> Result<BoundReport> {
    let name = "dyn-product-star-corollary-ub";
    product_params(name, dg, dh, t)?;
    let (dg, dh, t) = (int(dg), int(dh), int(t));
    let raw = dg * dh - dh;
    let mut report = BoundReport::new(name, Direction::Upper, r(raw.max(1)), &[("dg", dg), ("dh", dh), ("t", t)])
        .hypothesis("some minimum t-dynamo of H induces a star K_{1,dh-1}");
    if raw < 1 {
        report = report.note(format!("formula gives {raw}; clamped to 1"));
    }
    Ok(report)
}

/// `dyn_t(G □ H) <= gt - (t² - 3t + 2g)/2` when a minimum dynamo of H
/// induces a clique, with `g = dyn_t(G)`.
pub fn dyn_product_clique_corollary_ub(g: usize, t: usize) -> Result<BoundReport> {
    let name = "dyn-product-clique-corollary-ub";
    if t < 3 || g + 1 < t {
        return Err(Error::regime(name, format!("needs t >= 3 and g >= t-1, got g={g}, t={t}")));
    }
    let (g, t) = (int(g), int(t));
    let exact = r(g * t) - q(t * t - 3 * t + 2 * g, 2);
    Ok(BoundReport::new(name, Direction::Upper, exact, &[("g", g), ("t", t)])
        .hypothesis("some minimum t-dynamo of H induces a complete graph"))
}

/// Lower bound on `dyn_t(L(G))` for an r-regular bipartite G on n vertices.
pub fn regular_bipartite_line_lb(n: usize, r_: usize, t: usize) -> Result<BoundReport> {
    let name = "regular-bipartite-line-lb";
    if r_ < 1 || n % 2 == 1 || n < 2 * r_ {
        return Err(Error::invalid(format!(
            "no {r_}-regular bipartite graph on {n} vertices"
        )));
    }
    if t < 1 || t + 2 > 2 * r_ {
        return Err(Error::regime(name, format!("needs 1 <= t <= 2r-2, got r={r_}, t={t}")));
    }
    let (n, rr, t) = (int(n), int(r_), int(t));
    let eps = if (n - 2 * rr + t + 1) % 2 == 0 { q(1, 4) } else { r(0) };
    let exact = q(n * (2 * t - 2 * rr + 2) + (2 * rr - t).pow(2) - 4 * rr + 2 * t, 4) + eps;
    Ok(BoundReport::new(name, Direction::Lower, exact, &[("n", n), ("r", rr), ("t", t)]))
}

/// Lower bound on `dyn_t(L(G))` for a biregular bipartite G with sides of
/// sizes m and n and degrees r1, r2.
///
/// With `X = m + n + 1 + t - r1 - r2` the bound is
/// `(m r1 + n r2)/2 - mn + (X/2)² - φ`, `φ = 1/4` for odd X. The estimate
/// behind it needs `⌊X/2⌋ <= min(m, n)`; outside that it is reported as not
/// applicable, since it can then exceed the true value (K_2 □ K_6, t = 5).
pub fn biregular_line_lb(m: usize, n: usize, r1: usize, r2: usize, t: usize) -> Result<BoundReport> {
    let name = "biregular-line-lb";
    if m * r1 != n * r2 {
        return Err(Error::invalid(format!(
            "degree sums differ: m*r1 = {} but n*r2 = {}",
            m * r1,
            n * r2
        )));
    }
    if r1 < 1 || r2 < 1 || r1 > n || r2 > m {
        return Err(Error::invalid(format!(
            "no biregular bipartite graph with m={m}, n={n}, r1={r1}, r2={r2}"
        )));
    }
    if t < 1 || t + 2 > r1 + r2 {
        return Err(Error::regime(name, format!("needs 1 <= t <= r1+r2-2, got t={t}")));
    }
    let (m, n, r1, r2, t) = (int(m), int(n), int(r1), int(r2), int(t));
    let x = m + n + 1 + t - r1 - r2;
    let phi = if x % 2 == 0 { r(0) } else { q(1, 4) };
    let exact = q(m * r1 + n * r2, 2) - r(m * n) + q(x * x, 4) - phi;
    let report = BoundReport::new(
        name,
        Direction::Lower,
        exact,
        &[("m", m), ("n", n), ("r1", r1), ("r2", r2), ("t", t)],
    )
    .note("leading term is (m*r1 + n*r2)/2");
    if x.div_euclid(2) > m.min(n) {
        return Ok(report.inapplicable(format!(
            "floor((m+n+1+t-r1-r2)/2) = {} exceeds min(m, n) = {}",
            x.div_euclid(2),
            m.min(n)
        )));
    }
    Ok(report)
}

/// `dyn_t(K_m □ K_n) = m(t - m + 1)` for `m < t/2`, `n > t - m + 1`.
pub fn small_m_exact(m: usize, n: usize, t: usize) -> Result<BoundReport> {
    let name = "small-m-exact";
    if m < 1 || 2 * m >= t || n + m < t + 2 {
        return Err(Error::regime(
            name,
            format!("needs m >= 1, m < t/2, n > t-m+1 and t <= m+n-2, got m={m}, n={n}, t={t}"),
        ));
    }
    let (m, n, t) = (int(m), int(n), int(t));
    Ok(BoundReport::new(
        name,
        Direction::Exact,
        r(m * (t - m + 1)),
        &[("m", m), ("n", n), ("t", t)],
    ))
}

/// Bound names with their parameter lists, in call order.
pub const BOUNDS: [(&str, &[&str]); 10] = [
    ("line-graph-majority-lb", &["n", "k"]),
    ("dyn-product-cycle-ub", &["d", "n", "t"]),
    ("dyn-product-complete-ub", &["d", "t"]),
    ("dyn-product-naive-ub", &["dg", "dh"]),
    ("dyn-product-improved-ub", &["dg", "dh", "t"]),
    ("dyn-product-star-corollary-ub", &["dg", "dh", "t"]),
    ("dyn-product-clique-corollary-ub", &["g", "t"]),
    ("regular-bipartite-line-lb", &["n", "r", "t"]),
    ("biregular-line-lb", &["m", "n", "r1", "r2", "t"]),
    ("small-m-exact", &["m", "n", "t"]),
];

/// Evaluates the bound called `name` with named parameters.
pub fn evaluate(name: &str, params: &BTreeMap<String, usize>) -> Result<BoundReport> {
    let (_, wanted) = BOUNDS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::invalid(format!("unknown bound {name:?}")))?;
    let mut args = Vec::with_capacity(wanted.len());
    for key in wanted.iter() {
        let v = params
            .get(*key)
            .ok_or_else(|| Error::invalid(format!("{name} needs parameter {key}")))?;
        args.push(*v);
    }
    if let Some(extra) = params.keys().find(|k| !wanted.contains(&k.as_str())) {
        return Err(Error::invalid(format!("{name} does not take parameter {extra}")));
    }
    match name {
        "line-graph-majority-lb" => line_graph_majority_lb(args[0], args[1]),
        "dyn-product-cycle-ub" => dyn_product_cycle_ub(args[0], args[1], args[2]),
        "dyn-product-complete-ub" => dyn_product_complete_ub(args[0], args[1]),
        "dyn-product-naive-ub" => dyn_product_naive_ub(args[0], args[1]),
        "dyn-product-improved-ub" => dyn_product_improved_ub(args[0], args[1], args[2]),
        "dyn-product-star-corollary-ub" => dyn_product_star_corollary_ub(args[0], args[1], args[2]),
        "dyn-product-clique-corollary-ub" => dyn_product_clique_corollary_ub(args[0], args[1]),
        "regular-bipartite-line-lb" => regular_bipartite_line_lb(args[0], args[1], args[2]),
        "biregular-line-lb" => biregular_line_lb(args[0], args[1], args[2], args[3], args[4]),
        _ => small_m_exact(args[0], args[1], args[2]),
    }
}
