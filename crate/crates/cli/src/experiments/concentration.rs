use anyhow::Result;
use mantel4::proplab::{concentration_report, concentration_report_empirical, ConcentrationReport, Statistic};
use mantel4::randgen::sample_with;
use mantel4::VertexPartition;
use serde::Serialize;

use super::{cells, map_trials, rate, timed, trials};
use crate::config::{ExperimentConfig, Kind};
use crate::output::{csv_table, header_block, Report, Timing};

/// One trial, a skipped trial or a cell summary. Per-statistic columns
/// are pass flags on trial rows and pass rates on summary rows.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ConcentrationRow {
    pub row: &'static str,
    pub n: usize,
    pub p: f64,
    pub c: Option<f64>,
    pub trial: Option<u64>,
    pub seed: Option<u64>,
    pub edges: Option<usize>,
    /// The `p` the bands are evaluated at.
    pub p_band: Option<f64>,
    pub eps: f64,
    pub triple_min: Option<u64>,
    pub triple_max: Option<u64>,
    pub triple_codegree: Option<f64>,
    pub pair_codegree: Option<f64>,
    pub common_degree: Option<f64>,
    pub degree: Option<f64>,
    pub crossing_degree: Option<f64>,
    pub all_pass: Option<f64>,
    pub trials: Option<u64>,
    pub reason: Option<String>,
}

fn flag(b: Option<bool>) -> Option<f64> {
    b.map(|b| if b { 1.0 } else { 0.0 })
}

/// Per trial: the exact extremes of the five degree statistics of
/// `G^4(n, p)` against their bands, with a random equal-parts partition for
/// the crossing-degree rows.
pub fn run_concentration(cfg: &ExperimentConfig) -> Result<Report> {
    let consts = cfg.paper_constants()?;
    let all = trials(cfg);
    let outcomes = map_trials(&all, |t| {
        let (n, p) = (t.cell.n, t.cell.point.p);
        let (g, t_sample) = timed(|| sample_with(cfg.generator, n, 4, p, t.seed).expect("config validated"));
        let part = VertexPartition::random_equal_parts(n, 4, &mut t.seed.child(1).rng());
        let (report, t_report) = timed(|| {
            if cfg.empirical_p {
                concentration_report_empirical(&g, Some(&part), cfg.eps)
            } else {
                concentration_report(&g, p, Some(&part), cfg.eps)
            }
        });
        let timing = vec![
            Timing { n, p, trial: t.trial, stage: "sample", seconds: t_sample },
            Timing { n, p, trial: t.trial, stage: "report", seconds: t_report },
        ];
        (g.len(), report, timing)
    });

    let mut rows = Vec::new();
    let mut timing = Vec::new();
    let mut skipped = Vec::new();
    for (t, (edges, report, times)) in all.iter().zip(outcomes) {
        let base = ConcentrationRow {
            n: t.cell.n,
            p: t.cell.point.p,
            c: t.cell.point.c,
            trial: Some(t.trial),
            seed: Some(t.seed.derived),
            eps: cfg.eps,
            ..Default::default()
        };
        timing.extend(times);
        match report {
            Ok(r) => rows.push(trial_row(base, edges, &r)),
            Err(e) => {
                skipped.push(format!("n={} p={} trial={}: {e}", t.cell.n, t.cell.point.p, t.trial));
                rows.push(ConcentrationRow { row: "skip", reason: Some(e.to_string()), ..base });
            }
        }
    }

    let mut summaries = Vec::new();
    for (cell, in_cell) in cells(cfg).into_iter().zip(rows.chunks(cfg.trials as usize)) {
        let mean = |get: fn(&ConcentrationRow) -> Option<f64>| {
            let vals: Vec<f64> = in_cell.iter().filter_map(get).collect();
            rate(vals.iter().filter(|&&v| v == 1.0).count(), vals.len())
        };
        summaries.push(ConcentrationRow {
            row: "summary",
            n: cell.n,
            p: cell.point.p,
            c: cell.point.c,
            eps: cfg.eps,
            triple_codegree: mean(|r| r.triple_codegree),
            pair_codegree: mean(|r| r.pair_codegree),
            common_degree: mean(|r| r.common_degree),
            degree: mean(|r| r.degree),
            crossing_degree: mean(|r| r.crossing_degree),
            all_pass: mean(|r| r.all_pass),
            trials: Some(cfg.trials),
            ..Default::default()
        });
    }
    rows.extend(summaries);

    let note = if cfg.empirical_p {
        "bands evaluated at the empirical p = |G|/C(n,4)"
    } else {
        "bands evaluated at the generative p"
    };
    let csv = header_block(Kind::Concentration, cfg, &consts, &[note]) + &csv_table(&rows)?;
    Ok(Report { csv, json: None, timing, skipped })
}

fn trial_row(base: ConcentrationRow, edges: usize, r: &ConcentrationReport) -> ConcentrationRow {
    let triple = r.rows.iter().find(|row| row.statistic == Statistic::TripleCodegree);
    ConcentrationRow {
        row: "trial",
        edges: Some(edges),
        p_band: Some(r.p),
        triple_min: triple.and_then(|row| row.observed_min),
        triple_max: triple.and_then(|row| row.observed_max),
        triple_codegree: flag(r.passes(Statistic::TripleCodegree)),
        pair_codegree: flag(r.passes(Statistic::PairCodegree)),
        common_degree: flag(r.passes(Statistic::CommonDegree)),
        degree: flag(r.passes(Statistic::Degree)),
        crossing_degree: flag(r.passes(Statistic::CrossingDegree)),
        all_pass: flag(Some(r.all_pass())),
        ..base
    }
}
