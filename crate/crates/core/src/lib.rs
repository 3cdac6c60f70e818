//! Local sampling estimators for the 2-core of percolated sparse graphs.
//!
//! The estimator samples vertices, explores a bounded ball around each, and
//! decides by protected peeling whether the vertex could sit in the (giant)
//! 2-core. Exact oracles, random graph generators, edge percolation and a set
//! of structural diagnostics come along for validation.

pub mod ball;
pub mod diagnostics;
pub mod error;
pub mod estimator;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod percolation;
pub mod rng;

pub use ball::{classify, explore_ball, Ball, Classification, Explorer, Mode};
pub use error::{Error, Result};
pub use estimator::{estimate, sample_size, EstimateParams, EstimateReport};
pub use generators::GeneratorSpec;
pub use graph::Graph;
pub use oracle::{coreness, er_branching_oracle, two_core};
