use anyhow::Result;
use mantel4::proplab::low_pairs;
use mantel4::randgen::sample_with;
use mantel4::solvers::{
    is_k_partite, max_cut_exact, max_cut_local, max_tfree_exact, max_tfree_repair, SolverError,
};
use serde::Serialize;

use super::{cells, map_trials, rate, timed, trials, Trial};
use crate::config::{ExperimentConfig, Kind, Tier};
use crate::output::{csv_table, header_block, Report, Timing};

/// One trial (`row = "trial"`), a skipped trial (`row = "skip"`) or a cell
/// summary (`row = "summary"`).
#[derive(Debug, Clone, Default, Serialize)]
pub struct PhaseRow {
    pub row: &'static str,
    pub n: usize,
    pub k: usize,
    pub p: f64,
    pub c: Option<f64>,
    pub trial: Option<u64>,
    pub seed: Option<u64>,
    pub edges: Option<usize>,
    pub q_value: Option<usize>,
    pub q_optimal: Option<bool>,
    pub tfree_value: Option<usize>,
    pub tfree_optimal: Option<bool>,
    /// `yes`, `no` or `indeterminate` for the best T-free subhypergraph found.
    pub tfree_partite: Option<&'static str>,
    /// `|P(Π)|` for the partition achieving `q_value` (4-uniform hosts only).
    pub low_pairs: Option<usize>,
    /// Exact tier: both values certified and equal. Heuristic tier: repair
    /// value equals local cut value.
    pub event: Option<bool>,
    pub trials: Option<u64>,
    pub decided: Option<u64>,
    pub skipped: Option<u64>,
    pub event_rate: Option<f64>,
    pub reason: Option<String>,
}

struct Outcome {
    row: PhaseRow,
    timing: Vec<Timing>,
}

fn run_trial(cfg: &ExperimentConfig, alpha: f64, t: &Trial) -> Result<Outcome, SolverError> {
    let (n, k, p) = (t.cell.n, cfg.k, t.cell.point.p);
    let stage = |stage, seconds| Timing { n, p, trial: t.trial, stage, seconds };
    let (g, t_sample) = timed(|| sample_with(cfg.generator, n, k, p, t.seed).expect("config validated"));
    let restarts = cfg.solver.restarts.max(1);
    let (q, t_cut) = timed(|| match cfg.tier {
        Tier::Exact => max_cut_exact(&g, cfg.solver.cut_budget),
        Tier::Heuristic => max_cut_local(&g, t.seed.child(1), restarts),
    });
    let (tf, t_tfree) = timed(|| match cfg.tier {
        Tier::Exact => max_tfree_exact(&g, cfg.solver.tfree_budget),
        Tier::Heuristic => max_tfree_repair(&g, t.seed.child(2), restarts),
    });
    let (q, tf) = (q?, tf?);
    let f = g.sub_hypergraph(tf.edges().expect("edge witness"));
    let (partite, t_partite) = timed(|| is_k_partite(&f, cfg.solver.partite_budget));
    let partite = partite?;
    let low = if k == 4 && p > 0.0 {
        let part = q.partition().expect("cut witness");
        Some(low_pairs(&g, part, p, alpha).expect("4-uniform host").pairs.len())
    } else {
        None
    };
    let event = match cfg.tier {
        Tier::Exact => (q.optimal && tf.optimal).then_some(q.value == tf.value),
        Tier::Heuristic => Some(q.value == tf.value),
    };
    Ok(Outcome {
        row: PhaseRow {
            row: "trial",
            n,
            k,
            p,
            c: t.cell.point.c,
            trial: Some(t.trial),
            seed: Some(t.seed.derived),
            edges: Some(g.len()),
            q_value: Some(q.value),
            q_optimal: Some(q.optimal),
            tfree_value: Some(tf.value),
            tfree_optimal: Some(tf.optimal),
            tfree_partite: Some(partite.label()),
            low_pairs: low,
            event,
            ..Default::default()
        },
        timing: vec![stage("sample", t_sample), stage("cut", t_cut), stage("tfree", t_tfree), stage("partite", t_partite)],
    })
}

/// Samples `G^k(n, p)` per trial, computes the best cut `q` and the best
/// `T_k`-free subhypergraph, and records whether the two agree.
pub fn run_phase(cfg: &ExperimentConfig) -> Result<Report> {
    let consts = cfg.paper_constants()?;
    let all = trials(cfg);
    let outcomes = map_trials(&all, |t| run_trial(cfg, consts.alpha, t));

    let mut rows = Vec::new();
    let mut timing = Vec::new();
    let mut skipped = Vec::new();
    for (t, outcome) in all.iter().zip(outcomes) {
        match outcome {
            Ok(o) => {
                rows.push(o.row);
                timing.extend(o.timing);
            }
            Err(e) => {
                let reason = e.to_string();
                skipped.push(format!("n={} p={} trial={}: {reason}", t.cell.n, t.cell.point.p, t.trial));
                rows.push(PhaseRow {
                    row: "skip",
                    n: t.cell.n,
                    k: cfg.k,
                    p: t.cell.point.p,
                    c: t.cell.point.c,
                    trial: Some(t.trial),
                    seed: Some(t.seed.derived),
                    reason: Some(reason),
                    ..Default::default()
                });
            }
        }
    }

    let mut summaries = Vec::new();
    for (cell, in_cell) in cells(cfg).into_iter().zip(rows.chunks(cfg.trials as usize)) {
        let decided: Vec<bool> = in_cell.iter().filter_map(|r| r.event).collect();
        let skips = in_cell.iter().filter(|r| r.row == "skip").count();
        summaries.push(PhaseRow {
            row: "summary",
            n: cell.n,
            k: cfg.k,
            p: cell.point.p,
            c: cell.point.c,
            trials: Some(cfg.trials),
            decided: Some(decided.len() as u64),
            skipped: Some(skips as u64),
            event_rate: rate(decided.iter().filter(|&&e| e).count(), decided.len()),
            ..Default::default()
        });
    }
    rows.extend(summaries);

    let note = match cfg.tier {
        Tier::Exact => "event = certified max T-free value equals certified q",
        Tier::Heuristic => "event = repair value equals local-cut value (heuristic proxy, not the theorem's event)",
    };
    let csv = header_block(Kind::Phase, cfg, &consts, &[note]) + &csv_table(&rows)?;
    Ok(Report { csv, json: None, timing, skipped })
}
