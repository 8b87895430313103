//! Threshold monopolies and dynamic monopolies (dynamos) on graphs, with
//! explicit constructions on Cartesian products of cycles, complete graphs
//! and stars, closed-form bounds, and an exhaustive minimum-size solver.

pub mod bounds;
pub mod checks;
pub mod constructions;
pub mod engine;
pub mod error;
pub mod graph;
pub mod io;
pub mod solver;
pub mod thresholds;

pub use bounds::{BoundReport, Direction};
pub use constructions::{Construction, Family, SetKind};
pub use engine::{activate, is_dynamic_monopoly, is_static_monopoly, ActivationTrace, MonopolyCheck, VertexSet};
pub use error::{Error, Result};
pub use graph::{Graph, GridCoord};
pub use solver::{Budget, Objective, SolveResult, SolveStatus};
pub use thresholds::ThresholdAssignment;
