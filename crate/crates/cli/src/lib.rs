//! Reproducible experiment pipelines over the `twocore` library.

pub mod args;
pub mod config;
pub mod pipeline;
pub mod plot;

pub use config::{Command, RunConfig, UsageError};
pub use pipeline::{execute, run};
