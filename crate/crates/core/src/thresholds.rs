//! Threshold assignments.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Per-vertex activation thresholds, validated against a host graph.
///
/// Every constructor except [`ThresholdAssignment::constant_unbounded`]
/// guarantees `1 <= tau(v) <= deg(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdAssignment {
    values: Vec<u32>,
}

impl ThresholdAssignment {
    /// `tau(v) = t` everywhere.
    pub fn constant(g: &Graph, t: u32) -> Result<Self> {
        Self::explicit(g, vec![t; g.vertex_count()])
    }

    /// `tau(v) = t` everywhere, without the degree cap. Vertices whose degree
    /// is below `t` can then only ever be activated by seeding them.
    pub fn constant_unbounded(g: &Graph, t: u32) -> Result<Self> {
        if t == 0 {
            return Err(Error::invalid("thresholds must be at least 1"));
        }
        Ok(ThresholdAssignment {
            values: vec![t; g.vertex_count()],
        })
    }

    /// `tau(v) = deg(v) / 2`; every degree must be even and positive.
    pub fn simple_majority(g: &Graph) -> Result<Self> {
        let values = (0..g.vertex_count())
            .map(|v| match g.degree(v) {
                d if d >= 2 && d % 2 == 0 => Ok((d / 2) as u32),
                d => Err(Error::UnsupportedMajority { vertex: v, degree: d }),
            })
            .collect::<Result<_>>()?;
        Ok(ThresholdAssignment { values })
    }

    /// `tau(v) = (deg(v) + 1) / 2`; every degree must be odd.
    pub fn strict_majority(g: &Graph) -> Result<Self> {
        let values = (0..g.vertex_count())
            .map(|v| match g.degree(v) {
                d if d % 2 == 1 => Ok(((d + 1) / 2) as u32),
                d => Err(Error::UnsupportedMajority { vertex: v, degree: d }),
            })
            .collect::<Result<_>>()?;
        Ok(ThresholdAssignment { values })
    }

    pub fn explicit(g: &Graph, values: Vec<u32>) -> Result<Self> {
        if values.len() != g.vertex_count() {
            return Err(Error::invalid(format!(
                "{} thresholds given for {} vertices",
                values.len(),
                g.vertex_count()
            )));
        }
        for (v, &t) in values.iter().enumerate() {
            let degree = g.degree(v);
            if t == 0 || t as usize > degree {
                return Err(Error::ThresholdExceedsDegree {
                    vertex: v,
                    threshold: t,
                    degree,
                });
            }
        }
        Ok(ThresholdAssignment { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, v: usize) -> u32 {
        self.values[v]
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// The common value, if all thresholds agree.
    pub fn as_constant(&self) -> Option<u32> {
        let first = *self.values.first()?;
        self.values.iter().all(|&t| t == first).then_some(first)
    }

    /// Pointwise `max(1, tau(v) - 1)`.
    pub fn decremented(&self) -> Self {
        ThresholdAssignment {
            values: self.values.iter().map(|&t| t.saturating_sub(1).max(1)).collect(),
        }
    }

    /// Whether every value lies in `1..=deg(v)` for `g`.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.values.len() == g.vertex_count()
            && self
                .values
                .iter()
                .enumerate()
                .all(|(v, &t)| t >= 1 && t as usize <= g.degree(v))
    }
}
