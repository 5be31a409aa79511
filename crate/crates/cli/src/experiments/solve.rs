use anyhow::Result;
use mantel4::motifs::count_t;
use mantel4::solvers::{is_k_partite, max_cut_exact, max_cut_local, max_tfree_exact, max_tfree_repair, SolveResult};
use mantel4::{Hypergraph, TrialSeed, Vertex};
use serde::Serialize;

use super::timed;
use crate::config::{ExperimentConfig, Kind, Tier};
use crate::output::{csv_table, header_block, Report, Timing};

#[derive(Debug, Clone, Serialize)]
pub struct SolveRow {
    pub n: usize,
    pub k: usize,
    pub edges: usize,
    pub copies: u64,
    pub q_value: usize,
    pub q_optimal: bool,
    pub q_nodes: u64,
    pub tfree_value: usize,
    pub tfree_optimal: bool,
    pub tfree_nodes: u64,
    pub tfree_partite: &'static str,
}

#[derive(Debug, Serialize)]
struct Witnesses {
    /// Class label of every vertex in the best cut found.
    cut_labels: Vec<u8>,
    /// Edges of the best `T_k`-free subhypergraph found.
    tfree_edges: Vec<Vec<Vertex>>,
}

/// Best cut and best `T_k`-free subhypergraph of one given hypergraph.
pub fn run_solve(cfg: &ExperimentConfig, h: &Hypergraph) -> Result<Report> {
    cfg.validate(Kind::Solve)?;
    let consts = cfg.paper_constants()?;
    let seed = TrialSeed::derive(cfg.seed, 0);
    let restarts = cfg.solver.restarts.max(1);
    let (solved, secs) = timed(|| -> Result<(SolveResult, SolveResult)> {
        Ok(match cfg.tier {
            Tier::Exact => (max_cut_exact(h, cfg.solver.cut_budget)?, max_tfree_exact(h, cfg.solver.tfree_budget)?),
            Tier::Heuristic => (max_cut_local(h, seed.child(1), restarts)?, max_tfree_repair(h, seed.child(2), restarts)?),
        })
    });
    let (q, tf) = solved?;
    let tf_edges = tf.edges().expect("edge witness");
    let f = h.sub_hypergraph(tf_edges);
    let row = SolveRow {
        n: h.n(),
        k: h.k(),
        edges: h.len(),
        copies: count_t(h)?,
        q_value: q.value,
        q_optimal: q.optimal,
        q_nodes: q.stats.nodes,
        tfree_value: tf.value,
        tfree_optimal: tf.optimal,
        tfree_nodes: tf.stats.nodes,
        tfree_partite: is_k_partite(&f, cfg.solver.partite_budget)?.label(),
    };
    let witnesses = Witnesses {
        cut_labels: q.partition().expect("cut witness").labels().to_vec(),
        tfree_edges: f.edges().map(<[Vertex]>::to_vec).collect(),
    };
    let csv = header_block(Kind::Solve, cfg, &consts, &[]) + &csv_table(&[row])?;
    let timing = vec![Timing { n: h.n(), p: 0.0, trial: 0, stage: "solve", seconds: secs }];
    Ok(Report { csv, json: Some(serde_json::to_string_pretty(&witnesses)? + "\n"), timing, skipped: Vec::new() })
}
