//! Experiment harness for the `mantel4` toolkit: configuration, parallel
//! deterministic trials, and CSV/JSON output.

pub mod config;
pub mod experiments;
pub mod output;

pub use config::{ConfigError, ExperimentConfig, Kind, PGrid, Tier};
pub use experiments::{run, run_solve, with_threads};
pub use output::Report;

/// Environment variable holding the default worker count.
pub const THREADS_ENV: &str = "MANTEL4_THREADS";
