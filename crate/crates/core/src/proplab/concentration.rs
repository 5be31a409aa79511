use serde::Serialize;

use super::{check_eps, check_p, check_four, ProplabError, Result};
use crate::hypercore::{binomial, Hypergraph, VertexPartition};
use crate::randgen::Colex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    /// `|N(u, v, w)|` against `pn`.
    TripleCodegree,
    /// `|N(u, v)|` against `(p/2)n²`.
    PairCodegree,
    /// `d(u, v)` against `(p²/6)n³`.
    CommonDegree,
    /// `d(v)` against `(p/6)n³`.
    Degree,
    /// `d_Π(v)` for `v ∈ A_i` against `p` times the other three class sizes.
    CrossingDegree,
}

impl Statistic {
    pub const ALL: [Statistic; 5] = [
        Statistic::TripleCodegree,
        Statistic::PairCodegree,
        Statistic::CommonDegree,
        Statistic::Degree,
        Statistic::CrossingDegree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Statistic::TripleCodegree => "triple_codegree",
            Statistic::PairCodegree => "pair_codegree",
            Statistic::CommonDegree => "common_degree",
            Statistic::Degree => "degree",
            Statistic::CrossingDegree => "crossing_degree",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConcentrationRow {
    pub statistic: Statistic,
    /// Source class for crossing-degree rows.
    pub class: Option<usize>,
    pub expectation: f64,
    pub observed_min: Option<u64>,
    pub observed_max: Option<u64>,
    pub eps: f64,
    /// `false` when the row's hypothesis fails (no partition, a class below
    /// `n/80`, or an empty source class); such rows do not count.
    pub applicable: bool,
    pub pass: bool,
}

impl ConcentrationRow {
    fn new(statistic: Statistic, class: Option<usize>, expectation: f64, eps: f64, range: Option<(u64, u64)>) -> Self {
        let pass = range.is_some_and(|(lo, hi)| {
            (1.0 - eps) * expectation <= lo as f64 && hi as f64 <= (1.0 + eps) * expectation
        });
        ConcentrationRow {
            statistic,
            class,
            expectation,
            observed_min: range.map(|r| r.0),
            observed_max: range.map(|r| r.1),
            eps,
            applicable: range.is_some(),
            pass,
        }
    }

    fn not_applicable(statistic: Statistic, class: Option<usize>, expectation: f64, eps: f64) -> Self {
        ConcentrationRow { applicable: false, pass: false, ..Self::new(statistic, class, expectation, eps, None) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConcentrationReport {
    pub n: usize,
    pub p: f64,
    /// Whether `p` was estimated as `|G|/C(n, 4)` instead of given.
    pub p_empirical: bool,
    pub eps: f64,
    pub rows: Vec<ConcentrationRow>,
}

impl ConcentrationReport {
    /// Whether every applicable row of `stat` passes; `None` if no row of
    /// `stat` is applicable.
    pub fn passes(&self, stat: Statistic) -> Option<bool> {
        let rows: Vec<_> = self.rows.iter().filter(|r| r.statistic == stat && r.applicable).collect();
        (!rows.is_empty()).then(|| rows.iter().all(|r| r.pass))
    }

    /// All five statistics present and passing.
    pub fn all_pass(&self) -> bool {
        Statistic::ALL.iter().all(|&s| self.passes(s) == Some(true))
    }
}

fn min_max(values: impl IntoIterator<Item = u64>) -> Option<(u64, u64)> {
    values.into_iter().fold(None, |acc, v| match acc {
        None => Some((v, v)),
        Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
    })
}

/// `|G| / C(n, 4)`.
pub fn empirical_p(g: &Hypergraph) -> f64 {
    let total = binomial(g.n() as u64, g.k() as u64).unwrap_or(0);
    if total == 0 {
        0.0
    } else {
        g.len() as f64 / total as f64
    }
}

/// Exact minima and maxima of the five degree statistics of a 4-uniform
/// `g`, over all triples, pairs and vertices, compared with
/// `[(1 - eps)E, (1 + eps)E]` where `E` is evaluated at the given `p`.
pub fn concentration_report(
    g: &Hypergraph,
    p: f64,
    partition: Option<&VertexPartition>,
    eps: f64,
) -> Result<ConcentrationReport> {
    check_p(p)?;
    build(g, p, false, partition, eps)
}

/// [`concentration_report`] at `p = |G|/C(n, 4)`; the report is labelled.
pub fn concentration_report_empirical(
    g: &Hypergraph,
    partition: Option<&VertexPartition>,
    eps: f64,
) -> Result<ConcentrationReport> {
    let p = empirical_p(g);
    check_p(p)?;
    build(g, p, true, partition, eps)
}

fn build(
    g: &Hypergraph,
    p: f64,
    p_empirical: bool,
    partition: Option<&VertexPartition>,
    eps: f64,
) -> Result<ConcentrationReport> {
    check_four(g)?;
    check_eps(eps)?;
    if let Some(part) = partition {
        g.check_partition(part)?;
    }
    let n = g.n();
    let nf = n as f64;
    let mut rows = Vec::with_capacity(8);

    // co-neighborhood of every triple, indexed by colex rank
    let colex = Colex::new(n, 3).map_err(|e| ProplabError::Unsupported(e.to_string()))?;
    let triples = colex.total() as usize;
    let mut start = vec![0u32; triples + 1];
    let mut sub = [0u32; 3];
    let rank_without = |e: &[u32], skip: usize, sub: &mut [u32; 3]| {
        let mut t = 0;
        for (j, &v) in e.iter().enumerate() {
            if j != skip {
                sub[t] = v;
                t += 1;
            }
        }
        colex.rank(sub) as usize
    };
    for e in g.edges() {
        for skip in 0..4 {
            start[rank_without(e, skip, &mut sub) + 1] += 1;
        }
    }
    for i in 0..triples {
        start[i + 1] += start[i];
    }
    let mut fill = start.clone();
    let mut apex = vec![0u32; start[triples] as usize];
    for e in g.edges() {
        for skip in 0..4 {
            let r = rank_without(e, skip, &mut sub);
            apex[fill[r] as usize] = e[skip];
            fill[r] += 1;
        }
    }
    let triple_range = min_max((0..triples).map(|t| (start[t + 1] - start[t]) as u64));
    rows.push(ConcentrationRow::new(Statistic::TripleCodegree, None, p * nf, eps, triple_range));

    // pair co-degree |N(u, v)|: edges through u and v
    let mut pair_codeg = vec![0u64; n * n];
    for e in g.edges() {
        for i in 0..4 {
            for j in i + 1..4 {
                pair_codeg[e[i] as usize * n + e[j] as usize] += 1;
            }
        }
    }
    let pairs = || (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)));
    let pair_range = min_max(pairs().map(|(u, v)| pair_codeg[u * n + v]));
    rows.push(ConcentrationRow::new(Statistic::PairCodegree, None, p / 2.0 * nf * nf, eps, pair_range));

    // common degree d(u, v) = #triples t with t + u and t + v both edges
    let mut common = vec![0u64; n * n];
    for t in 0..triples {
        let mut nb: Vec<u32> = apex[start[t] as usize..start[t + 1] as usize].to_vec();
        nb.sort_unstable();
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                common[nb[i] as usize * n + nb[j] as usize] += 1;
            }
        }
    }
    let common_range = min_max(pairs().map(|(u, v)| common[u * n + v]));
    rows.push(ConcentrationRow::new(
        Statistic::CommonDegree,
        None,
        p * p / 6.0 * nf.powi(3),
        eps,
        common_range,
    ));

    let degree_range = min_max(g.degrees().into_iter().map(|d| d as u64));
    rows.push(ConcentrationRow::new(Statistic::Degree, None, p / 6.0 * nf.powi(3), eps, degree_range));

    match partition {
        Some(part) if part.r() == 4 => {
            let mut crossing = vec![0u64; n];
            for e in g.edges() {
                if Hypergraph::is_crossing(e, part) {
                    for &v in e {
                        crossing[v as usize] += 1;
                    }
                }
            }
            let sizes = part.sizes();
            for class in 0..4 {
                let others: Vec<usize> = (0..4).filter(|&c| c != class).map(|c| sizes[c]).collect();
                let expectation = p * others.iter().product::<usize>() as f64;
                let large = others.iter().all(|&s| s as f64 >= nf / 80.0);
                let range = min_max(part.class_members(class).into_iter().map(|v| crossing[v as usize]));
                rows.push(if large && range.is_some() {
                    ConcentrationRow::new(Statistic::CrossingDegree, Some(class), expectation, eps, range)
                } else {
                    ConcentrationRow::not_applicable(Statistic::CrossingDegree, Some(class), expectation, eps)
                });
            }
        }
        _ => rows.push(ConcentrationRow::not_applicable(Statistic::CrossingDegree, None, f64::NAN, eps)),
    }

    Ok(ConcentrationReport { n, p, p_empirical, eps, rows })
}
