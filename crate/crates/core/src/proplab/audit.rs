use serde::Serialize;

use super::constants::{to_f64, PaperConstants};
use super::structure::{check_sub, decomposition, low_pairs, members, DecompositionReport};
use super::{check_eps, check_p, check_partition4, ProplabError, Result};
use crate::hypercore::{binomial, is_balanced, EdgeSet, Hypergraph, VertexPartition};
use crate::motifs::{find_t, that_gadgets};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityLine {
    pub name: &'static str,
    pub lhs: f64,
    pub relation: &'static str,
    pub rhs: f64,
    pub holds: bool,
}

impl InequalityLine {
    fn new(name: &'static str, lhs: f64, relation: &'static str, rhs: f64) -> Self {
        let holds = match relation {
            "<" => lhs < rhs,
            "<=" => lhs <= rhs,
            ">=" => lhs >= rhs,
            ">" => lhs > rhs,
            _ => unreachable!("unknown relation {relation}"),
        };
        InequalityLine { name, lhs, relation, rhs, holds }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Conditions {
    /// `|∪B_i|`.
    pub union_b: usize,
    /// `δpn⁴`.
    pub union_b_limit: f64,
    pub i: bool,
    pub ii: bool,
    /// Pairs inside `A₁` covered by an edge of `B₁` that lie in `P(Π)`.
    pub b1_pairs_in_low: usize,
    pub iii: bool,
}

/// `T̂` gadgets certified by `B₁`, and where their two crossing edges lie.
/// When `F` is `T`-free no gadget has both edges in `F`, so every gadget
/// has an edge in `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GadgetTally {
    pub total: u64,
    pub hitting_m: u64,
    pub both_in_f: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    /// `relabeling[c]` is the new label of given class `c`; the class with
    /// the most `B_i` edges (lowest label on ties) becomes `A₁`.
    pub relabeling: [usize; 4],
    pub b_sizes_given: [usize; 4],
    pub partition: VertexPartition,
    pub f_size: usize,
    pub f_cross: usize,
    pub g_cross: usize,
    pub b1_size: usize,
    pub m_size: usize,
    pub lines: Vec<InequalityLine>,
    pub conditions: Conditions,
    pub gadgets: GadgetTally,
    pub degenerate: bool,
    pub decomposition: DecompositionReport,
}

impl AuditReport {
    pub fn line(&self, name: &str) -> Option<&InequalityLine> {
        self.lines.iter().find(|l| l.name == name)
    }
}

fn b_sizes(f: &Hypergraph, partition: &VertexPartition) -> [usize; 4] {
    let mut sizes = [0; 4];
    for e in f.edges() {
        for (class, size) in sizes.iter_mut().enumerate() {
            if e.iter().filter(|&&v| partition.class_of(v) == class).count() >= 2 {
                *size += 1;
            }
        }
    }
    sizes
}

/// Both sides of the Lemma 13 conclusion and of Claims 15–18, evaluated at
/// the given scale. These are reported, not asserted: the inequalities are
/// asymptotic statements.
pub fn lemma13_audit(
    g: &Hypergraph,
    f: &Hypergraph,
    partition: &VertexPartition,
    p: f64,
    consts: &PaperConstants,
) -> Result<AuditReport> {
    check_p(p)?;
    let f_in_g = check_sub(g, f)?;
    check_partition4(g, partition)?;
    if let Some(w) = find_t(f)? {
        return Err(ProplabError::NotTFree(Box::new(w)));
    }

    let given = b_sizes(f, partition);
    let top = (0..4).fold(0, |best, c| if given[c] > given[best] { c } else { best });
    let mut relabeling = [0, 1, 2, 3];
    relabeling.swap(0, top);
    let partition = partition.relabeled(&relabeling)?;

    let dec = decomposition(g, f, &partition, p, consts)?;
    let n = g.n() as f64;
    let (eps1, eps2, eps3, delta) =
        (to_f64(consts.eps1), to_f64(consts.eps2), to_f64(consts.eps3), to_f64(consts.delta));

    let f_cross = f.crossing_edges(&partition)?.len();
    let g_cross = g.crossing_edges(&partition)?.len();
    let b1 = dec.b[0].len();
    let m = dec.m.len() as f64;

    let in_c = members_of(&dec.c, g.n());
    let l_prime = dec
        .l
        .edges()
        .iter()
        .filter(|&&(u, v)| in_c[u as usize] == in_c[v as usize])
        .count();

    let mut lines = vec![
        InequalityLine::new("conclusion", (f_cross + 4 * b1) as f64, "<", g_cross as f64),
        InequalityLine::new("conclusion_non_strict", (f_cross + 4 * b1) as f64, "<=", g_cross as f64),
        InequalityLine::new("claim15", dec.c.len() as f64, "<=", eps3 * n),
        InequalityLine::new(
            "claim16",
            m,
            ">=",
            eps1 * eps2 / (16.0 * eps3) * p * n.powi(3) * dec.c1.len() as f64,
        ),
        InequalityLine::new("claim17", m, ">=", p * n * n / (320.0 * eps1) * l_prime as f64),
        InequalityLine::new("claim18", m, ">=", p * n.powi(3) / 130.0 * dec.c2.len() as f64),
    ];

    let union_b = EdgeSet::filter(f, |i, _| dec.b.iter().any(|set| set.contains(i))).len();
    let union_b_limit = delta * p * n.powi(4);
    lines.push(InequalityLine::new("condition_i", union_b as f64, "<=", union_b_limit));

    let in_a1 = members(&partition, 0);
    let mut covered = Vec::new();
    for i in dec.b[0].iter() {
        let e: Vec<_> = f.edge(i).iter().copied().filter(|&v| in_a1[v as usize]).collect();
        for a in 0..e.len() {
            for b in a + 1..e.len() {
                covered.push((e[a], e[b]));
            }
        }
    }
    covered.sort_unstable();
    covered.dedup();
    let b1_pairs_in_low = covered.iter().filter(|&&(u, v)| dec.low_pairs.contains(u, v)).count();

    let b1_in_g = EdgeSet::new(g, dec.b[0].iter().map(|i| f_in_g.indices()[i] as usize))?;
    let mut gadgets = GadgetTally { total: 0, hitting_m: 0, both_in_f: 0 };
    let mut quad = [0; 4];
    for gadget in that_gadgets(g, &partition, &b1_in_g)? {
        let mut in_f = 0;
        for w in [gadget.anchors.0, gadget.anchors.1] {
            quad[..3].copy_from_slice(&gadget.triple);
            quad[3] = w;
            in_f += usize::from(f.contains(&quad));
        }
        gadgets.total += 1;
        gadgets.hitting_m += u64::from(in_f < 2);
        gadgets.both_in_f += u64::from(in_f == 2);
    }

    Ok(AuditReport {
        relabeling,
        b_sizes_given: given,
        partition,
        f_size: f.len(),
        f_cross,
        g_cross,
        b1_size: b1,
        m_size: dec.m.len(),
        lines,
        conditions: Conditions {
            union_b,
            union_b_limit,
            i: union_b as f64 <= union_b_limit,
            ii: b1 > 0,
            b1_pairs_in_low,
            iii: b1_pairs_in_low == 0,
        },
        gadgets,
        degenerate: dec.thresholds.degenerate(),
        decomposition: dec,
    })
}

fn members_of(set: &[u32], n: usize) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &v in set {
        mask[v as usize] = true;
    }
    mask
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GapVerdict {
    /// The inequality holds for the supplied `q` (and so for the true `q(G)`).
    Holds,
    /// `q` is certified and the inequality fails.
    Violated,
    /// `q` is only a lower bound and the inequality fails for it.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapReport {
    pub q_value: usize,
    pub q_certified: bool,
    pub g_cross: usize,
    pub low_pairs: usize,
    /// `|P(Π)|·δ·n³·p²`.
    pub penalty: f64,
    /// `q − |G[Π]| − |P(Π)|·δ·n³·p²`.
    pub gap: f64,
    pub balanced: bool,
    pub verdict: GapVerdict,
}

/// The Lemma 14 gap for a partition. The inequality is strict when
/// `P(Π) ≠ ∅` and non-strict otherwise.
pub fn lemma14_gap(
    g: &Hypergraph,
    partition: &VertexPartition,
    p: f64,
    consts: &PaperConstants,
    q_value: usize,
    q_certified: bool,
) -> Result<GapReport> {
    check_p(p)?;
    let low = low_pairs(g, partition, p, consts.alpha)?.pairs.len();
    let g_cross = g.crossing_edges(partition)?.len();
    let n = g.n() as f64;
    let penalty = if low == 0 { 0.0 } else { low as f64 * to_f64(consts.delta) * n.powi(3) * p * p };
    let gap = (q_value as f64 - g_cross as f64) - penalty;
    let satisfied = if low == 0 { gap >= 0.0 } else { gap > 0.0 };
    let verdict = match (satisfied, q_certified) {
        (true, _) => GapVerdict::Holds,
        (false, true) => GapVerdict::Violated,
        (false, false) => GapVerdict::Inconclusive,
    };
    Ok(GapReport {
        q_value,
        q_certified,
        g_cross,
        low_pairs: low,
        penalty,
        gap,
        balanced: is_balanced(partition, g.n()),
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Prop10Report {
    pub f_size: usize,
    /// `(3/32 − ε)·C(n, 4)·p`.
    pub bound: f64,
    pub size_holds: bool,
    pub balanced: bool,
    pub class_sizes: Vec<usize>,
}

pub fn prop10_check(
    g: &Hypergraph,
    f: &Hypergraph,
    partition: &VertexPartition,
    p: f64,
    eps: f64,
) -> Result<Prop10Report> {
    check_p(p)?;
    check_eps(eps)?;
    check_sub(g, f)?;
    check_partition4(g, partition)?;
    let quads = binomial(g.n() as u64, 4).unwrap_or(0) as f64;
    let bound = (3.0 / 32.0 - eps) * quads * p;
    Ok(Prop10Report {
        f_size: f.len(),
        bound,
        size_holds: f.len() as f64 >= bound,
        balanced: is_balanced(partition, g.n()),
        class_sizes: partition.sizes().to_vec(),
    })
}
