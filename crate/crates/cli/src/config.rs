//! Experiment configuration, read from a single TOML file.
//!
//! ```toml
//! kind = "phase"                 # optional; must match the subcommand
//! n = [8, 10]
//! k = 4
//! p = { absolute = [0.3, 0.5] }  # or { log_scaled = [1.0, 2.0] }: p = c·ln(n)/n
//! trials = 20
//! seed = 1
//! tier = "exact"                 # or "heuristic"
//!
//! [solver]
//! restarts = 4
//! cut_budget = { max_nodes = 10000000 }
//!
//! [constants]                    # overrides of the paper constants
//! eps1 = "1/100"
//! gamma = "formula"
//! ```

use std::path::PathBuf;

use mantel4::proplab::{PaperConstants, Rational};
use mantel4::randgen::{log_scaled_probability, Generator};
use mantel4::solvers::Budget;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot parse config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("invalid constants override: {0}")]
    Constants(String),
    #[error("config kind {config:?} does not match subcommand {command:?}")]
    KindMismatch { config: Kind, command: Kind },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Phase,
    Concentration,
    Audit,
    TuranTable,
    Solve,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Phase => "phase",
            Kind::Concentration => "concentration",
            Kind::Audit => "audit",
            Kind::TuranTable => "turan-table",
            Kind::Solve => "solve",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    #[default]
    Exact,
    Heuristic,
}

/// Edge probabilities, absolute or as multipliers of `ln(n)/n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PGrid {
    Absolute(Vec<f64>),
    LogScaled(Vec<f64>),
}

impl Default for PGrid {
    fn default() -> Self {
        PGrid::Absolute(Vec::new())
    }
}

/// One resolved grid point: the edge probability and, for log-scaled grids,
/// its multiplier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PPoint {
    pub p: f64,
    pub c: Option<f64>,
}

impl PGrid {
    pub fn len(&self) -> usize {
        match self {
            PGrid::Absolute(v) | PGrid::LogScaled(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self, n: usize) -> Vec<PPoint> {
        match self {
            PGrid::Absolute(ps) => ps.iter().map(|&p| PPoint { p, c: None }).collect(),
            PGrid::LogScaled(cs) => {
                cs.iter().map(|&c| PPoint { p: log_scaled_probability(c, n), c: Some(c) }).collect()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub restarts: usize,
    pub cut_budget: Budget,
    pub tfree_budget: Budget,
    pub partite_budget: Budget,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            restarts: 4,
            cut_budget: Budget::nodes(50_000_000),
            tfree_budget: Budget::nodes(2_000_000),
            partite_budget: Budget::nodes(1_000_000),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub kind: Option<Kind>,
    #[serde(default)]
    pub n: Vec<usize>,
    #[serde(default = "default_k")]
    pub k: usize,
    #[serde(default)]
    pub p: PGrid,
    #[serde(default = "default_trials")]
    pub trials: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub tier: Tier,
    #[serde(default)]
    pub generator: Generator,
    #[serde(default)]
    pub solver: SolverConfig,
    /// Band width of the concentration experiment.
    #[serde(default = "default_eps")]
    pub eps: f64,
    /// Evaluate concentration bands at `|G|/C(n, 4)` instead of `p`.
    #[serde(default)]
    pub empirical_p: bool,
    /// Largest `n` allowed by the Turán table.
    #[serde(default)]
    pub cap: Option<usize>,
    #[serde(default)]
    pub constants: toml::Table,
    #[serde(default, skip_serializing)]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing)]
    pub threads: Option<usize>,
}

fn default_k() -> usize {
    4
}

fn default_trials() -> u64 {
    1
}

fn default_eps() -> f64 {
    0.25
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        toml::from_str("").expect("empty config is valid")
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        Ok(toml::from_str(text)?)
    }

    /// The paper constants with this config's overrides applied. Overriding
    /// `eps1` or `eps2` without `delta`/`eps3` recomputes both from the
    /// composite formula.
    pub fn paper_constants(&self) -> Result<PaperConstants, ConfigError> {
        let base = toml::Table::try_from(PaperConstants::paper()).map_err(|e| ConfigError::Constants(e.to_string()))?;
        let mut merged = base;
        for (key, value) in &self.constants {
            merged.insert(key.clone(), value.clone());
        }
        let mut consts: PaperConstants =
            merged.try_into().map_err(|e: toml::de::Error| ConfigError::Constants(e.to_string()))?;
        let touched = |key: &str| self.constants.contains_key(key);
        if (touched("eps1") || touched("eps2")) && !touched("delta") && !touched("eps3") {
            let (delta, eps3) = PaperConstants::derived_delta_eps3(consts.eps1, consts.eps2);
            consts.delta = delta;
            consts.eps3 = eps3;
        }
        for (name, r) in [("eps1", consts.eps1), ("eps2", consts.eps2), ("delta", consts.delta), ("eps3", consts.eps3)] {
            if r <= Rational::from_integer(0) {
                return Err(ConfigError::Constants(format!("{name} must be positive")));
            }
        }
        Ok(consts)
    }

    /// Checks the fields `kind` needs, before any trial runs.
    pub fn validate(&self, kind: Kind) -> Result<(), ConfigError> {
        if let Some(config) = self.kind {
            if config != kind {
                return Err(ConfigError::KindMismatch { config, command: kind });
            }
        }
        let bad = |msg: String| Err(ConfigError::Invalid(msg));
        if kind == Kind::Solve {
            return Ok(());
        }
        if self.n.is_empty() {
            return bad("n grid is empty".into());
        }
        let sampling = matches!(kind, Kind::Phase | Kind::Concentration | Kind::Audit);
        if sampling {
            if self.p.is_empty() {
                return bad("p grid is empty".into());
            }
            if self.trials == 0 {
                return bad("trials must be at least 1".into());
            }
            for &n in &self.n {
                for point in self.p.points(n) {
                    if !(0.0..=1.0).contains(&point.p) {
                        return bad(format!("p = {} outside [0, 1] at n = {n}", point.p));
                    }
                }
            }
        }
        let k_range = match kind {
            Kind::Concentration | Kind::Audit => 4..=4,
            _ => 2..=4,
        };
        if !k_range.contains(&self.k) {
            return bad(format!("{} needs k in {k_range:?}, got {}", kind.name(), self.k));
        }
        if let Some(&n) = self.n.iter().find(|&&n| n < self.k) {
            return bad(format!("n = {n} is smaller than k = {}", self.k));
        }
        if kind == Kind::Concentration && !(self.eps.is_finite() && self.eps >= 0.0) {
            return bad(format!("eps = {} must be a non-negative number", self.eps));
        }
        if kind == Kind::Audit {
            let consts = self.paper_constants()?;
            if consts.gamma.is_none() {
                return bad("audit needs constants.gamma = \"formula\" or \"decimal\"".into());
            }
        } else {
            self.paper_constants()?;
        }
        if kind == Kind::TuranTable {
            let cap = self.turan_cap();
            if let Some(&n) = self.n.iter().find(|&&n| n > cap) {
                return bad(format!("n = {n} exceeds the Turán table cap {cap} for k = {}", self.k));
            }
        }
        if let Some(0) = self.threads {
            return bad("threads must be at least 1".into());
        }
        Ok(())
    }

    pub fn turan_cap(&self) -> usize {
        self.cap.unwrap_or(match self.k {
            2 => 10,
            3 => 9,
            _ => 7,
        })
    }

    /// The config as echoed into output headers: everything except the
    /// output path and thread count.
    pub fn echo(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}
