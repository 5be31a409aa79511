//! The experiments. Each one is a pure function of its config (timings
//! aside): trials run on the current rayon pool, each with its own derived
//! seed, and rows are collected in trial-index order.
//!
//! Trial `t` of grid cell `c` (cells ordered by `n`, then by `p`) uses
//! `TrialSeed::derive(seed, c·trials + t)`.

mod audit;
mod concentration;
mod phase;
mod solve;
mod turan;

use std::time::Instant;

use anyhow::Result;
use mantel4::TrialSeed;
use rayon::prelude::*;

use crate::config::{ExperimentConfig, Kind, PPoint};
use crate::output::Report;

pub use audit::{run_audit, AuditRow};
pub use concentration::{run_concentration, ConcentrationRow};
pub use phase::{run_phase, PhaseRow};
pub use solve::{run_solve, SolveRow};
pub use turan::{run_turan_table, TuranRow};

#[derive(Debug, Clone, Copy)]
pub struct Cell {
    pub index: usize,
    pub n: usize,
    pub point: PPoint,
}

#[derive(Debug, Clone, Copy)]
pub struct Trial {
    pub cell: Cell,
    pub trial: u64,
    pub seed: TrialSeed,
}

pub fn cells(cfg: &ExperimentConfig) -> Vec<Cell> {
    let mut out = Vec::new();
    for &n in &cfg.n {
        for point in cfg.p.points(n) {
            out.push(Cell { index: out.len(), n, point });
        }
    }
    out
}

pub fn trials(cfg: &ExperimentConfig) -> Vec<Trial> {
    cells(cfg)
        .into_iter()
        .flat_map(|cell| {
            (0..cfg.trials).map(move |t| Trial {
                cell,
                trial: t,
                seed: TrialSeed::derive(cfg.seed, cell.index as u64 * cfg.trials + t),
            })
        })
        .collect()
}

/// Runs `f` on every trial in parallel; results come back in trial order.
pub fn map_trials<T: Send>(trials: &[Trial], f: impl Fn(&Trial) -> T + Sync) -> Vec<T> {
    trials
        .par_iter()
        .map(|t| {
            log::debug!("n={} p={} trial={}", t.cell.n, t.cell.point.p, t.trial);
            f(t)
        })
        .collect()
}

pub fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64())
}

/// Validates `cfg` for `kind` and runs it. `solve` needs an input
/// hypergraph and is run through [`run_solve`] instead.
pub fn run(kind: Kind, cfg: &ExperimentConfig) -> Result<Report> {
    cfg.validate(kind)?;
    match kind {
        Kind::Phase => run_phase(cfg),
        Kind::Concentration => run_concentration(cfg),
        Kind::Audit => run_audit(cfg),
        Kind::TuranTable => run_turan_table(cfg),
        Kind::Solve => anyhow::bail!("solve takes an input hypergraph"),
    }
}

/// Runs `f` on a pool of `threads` workers (rayon's default if `None`).
pub fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    Ok(builder.build()?.install(f))
}

fn rate(hits: usize, total: usize) -> Option<f64> {
    (total > 0).then(|| hits as f64 / total as f64)
}
