//! Exact and heuristic optimizers over a host hypergraph.
//!
//! * maximum `T_k`-free edge subset: [`max_tfree_exact`] (branch and bound
//!   over edges) and [`max_tfree_repair`] (greedy deletion);
//! * maximum partite cut with `r = k` classes: [`max_cut_exact`] and
//!   [`max_cut_local`], with the `k = 4` front doors [`max_cut4_exact`],
//!   [`max_cut4_local`], [`best_partition_for`] and [`is_4partite`];
//! * [`bipartite_half`] of a simple graph.
//!
//! Exact searches are single-threaded so that values, optimality flags and
//! witnesses depend only on the input and the node budget.

mod bipartite;
mod cut;
mod tfree;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::hypercore::{EdgeSet, HypergraphError, VertexPartition};
use crate::motifs::MotifError;

pub use bipartite::{bipartite_half, BipartiteHalf};
pub use cut::{
    best_partition_for, is_4partite, is_k_partite, max_cut4_exact, max_cut4_local, max_cut_exact,
    max_cut_exact_with, max_cut_local, CutMethod, Partiteness,
};
pub use tfree::{max_tfree_exact, max_tfree_repair, MAX_EXACT_COPIES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("host has more than {limit} copies of T_k; exact search refused")]
    TooManyCopies { limit: usize },
    #[error("solver needs uniformity {expected}, host has {got}")]
    Uniformity { expected: usize, got: usize },
    #[error(transparent)]
    Motif(#[from] MotifError),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

pub type Result<T, E = SolverError> = std::result::Result<T, E>;

/// Search limits. `None` means unlimited. Node limits are deterministic;
/// time limits are not.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_seconds: Option<f64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Budget { max_nodes: Some(max_nodes), max_seconds: None }
    }

    pub fn seconds(max_seconds: f64) -> Self {
        Budget { max_nodes: None, max_seconds: Some(max_seconds) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Edges(EdgeSet),
    Partition(VertexPartition),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct SolveStats {
    pub nodes: u64,
    #[serde(serialize_with = "as_seconds")]
    pub elapsed: Duration,
    pub budget_hit: bool,
}

fn as_seconds<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

/// Outcome of a solver: the objective value (an edge count), a witness
/// achieving it, and whether the search space was exhausted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub value: usize,
    pub witness: Witness,
    pub optimal: bool,
    pub stats: SolveStats,
}

impl SolveResult {
    pub fn edges(&self) -> Option<&EdgeSet> {
        match &self.witness {
            Witness::Edges(e) => Some(e),
            Witness::Partition(_) => None,
        }
    }

    pub fn partition(&self) -> Option<&VertexPartition> {
        match &self.witness {
            Witness::Partition(p) => Some(p),
            Witness::Edges(_) => None,
        }
    }
}

/// Node and clock accounting for one search.
struct Meter {
    start: Instant,
    nodes: u64,
    max_nodes: u64,
    deadline: Option<Duration>,
    hit: bool,
}

impl Meter {
    fn new(budget: Budget) -> Self {
        Meter {
            start: Instant::now(),
            nodes: 0,
            max_nodes: budget.max_nodes.unwrap_or(u64::MAX),
            deadline: budget.max_seconds.map(Duration::from_secs_f64),
            hit: false,
        }
    }

    /// Counts one node; `true` once the budget is exhausted.
    #[inline]
    fn tick(&mut self) -> bool {
        if self.hit {
            return true;
        }
        if self.nodes >= self.max_nodes {
            self.hit = true;
            return true;
        }
        self.nodes += 1;
        if let Some(limit) = self.deadline {
            if self.nodes % 1024 == 0 && self.start.elapsed() >= limit {
                self.hit = true;
            }
        }
        self.hit
    }

    fn stats(&self) -> SolveStats {
        SolveStats { nodes: self.nodes, elapsed: self.start.elapsed(), budget_hit: self.hit }
    }
}
