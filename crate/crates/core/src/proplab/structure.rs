use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use super::constants::{to_f64, PaperConstants};
use super::{check_eps, check_four, check_p, check_partition4, ProplabError, Result};
use crate::hypercore::{pack, EdgeSet, Hypergraph, PairGraph, Vertex, VertexPartition};

/// Low co-degree pairs `P(Π)`: pairs `{u, v} ⊆ A₁` with
/// `d_Π(u, v) < (α/32)p²n³`, and `d_P(v)` for every vertex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LowPairs {
    pub threshold: f64,
    pub pairs: PairGraph,
    pub degrees: Vec<usize>,
    pub max_degree: usize,
}

impl LowPairs {
    /// `max d_P(v) < ξ/p`.
    pub fn below_xi_over_p(&self, xi: f64, p: f64) -> bool {
        (self.max_degree as f64) < xi / p
    }
}

pub fn low_pairs(g: &Hypergraph, partition: &VertexPartition, p: f64, alpha: f64) -> Result<LowPairs> {
    check_four(g)?;
    check_partition4(g, partition)?;
    let n = g.n() as f64;
    let threshold = alpha / 32.0 * p * p * n.powi(3);
    let a1 = partition.class_members(0);
    let mut pairs = Vec::new();
    for (i, &u) in a1.iter().enumerate() {
        for &v in &a1[i + 1..] {
            if (g.common_degree(u, v, Some(partition))? as f64) < threshold {
                pairs.push((u, v));
            }
        }
    }
    let pairs = PairGraph::from_pairs_unchecked(g.n(), pairs);
    let degrees: Vec<usize> = (0..g.n() as Vertex).map(|v| pairs.degree(v)).collect();
    Ok(LowPairs { threshold, max_degree: pairs.max_degree(), pairs, degrees })
}

/// Number of triples `{u, v, w}` with `|N(u, v, w) ∩ A| > 2·eps·p·n`.
pub fn lemma12_count(g: &Hypergraph, a: &[Vertex], eps: f64, p: f64) -> Result<u64> {
    check_four(g)?;
    check_eps(eps)?;
    check_p(p)?;
    for &v in a {
        g.check_vertex(v)?;
    }
    let threshold = 2.0 * eps * p * g.n() as f64;
    let mut in_a = vec![false; g.n()];
    for &v in a {
        in_a[v as usize] = true;
    }
    let mut hits: FxHashMap<u128, u64> = FxHashMap::default();
    let mut sub = [0 as Vertex; 3];
    for e in g.edges() {
        for skip in 0..4 {
            if !in_a[e[skip] as usize] {
                continue;
            }
            let mut t = 0;
            for (j, &v) in e.iter().enumerate() {
                if j != skip {
                    sub[t] = v;
                    t += 1;
                }
            }
            *hits.entry(pack(&sub)).or_default() += 1;
        }
    }
    // triples never hit meet A in nothing, which never exceeds the threshold
    Ok(hits.values().filter(|&&c| c as f64 > threshold).count() as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecompositionConstants {
    pub alpha: f64,
    pub eps1: f64,
    pub eps2: f64,
    pub eps3: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Thresholds {
    /// `(α/32)p²n³`, defining `P(Π)`.
    pub low_pair: f64,
    /// `ε₁n`, defining `C`.
    pub big_l_degree: f64,
    /// `ε₂pn³`, defining `C₁`.
    pub crossing_in_f: f64,
    /// `ε₁n < 1`: every vertex of positive `L`-degree lands in `C`.
    pub eps1_n_below_one: bool,
    /// `ε₂pn³ < 1`: every vertex of `C` with a crossing `F`-edge lands in `C₁`.
    pub eps2_pn3_below_one: bool,
}

impl Thresholds {
    pub fn degenerate(&self) -> bool {
        self.eps1_n_below_one || self.eps2_pn3_below_one
    }
}

/// The sets of the structural argument for a `T`-free `F ⊆ G` and a
/// 4-partition `Π` (class 0 is `A₁`).
///
/// `b` and `b1_parts` index edges of `F`; `m` indexes edges of `G`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionReport {
    pub low_pairs: PairGraph,
    /// `B_i = {e ∈ F : |e ∩ A_i| ≥ 2}`.
    pub b: [EdgeSet; 4],
    /// Crossing edges of `G` not in `F`.
    pub m: EdgeSet,
    /// Shadow graph of `F` restricted to pairs inside `A₁`.
    pub l: PairGraph,
    pub c: Vec<Vertex>,
    pub d: Vec<Vertex>,
    pub c1: Vec<Vertex>,
    pub c2: Vec<Vertex>,
    /// `B₁^(1)`, `B₁^(2)`, `B₁^(3)`.
    pub b1_parts: [EdgeSet; 3],
    pub constants: DecompositionConstants,
    pub thresholds: Thresholds,
}

pub(crate) fn members(partition: &VertexPartition, class: usize) -> Vec<bool> {
    partition.labels().iter().map(|&l| l as usize == class).collect()
}

pub(crate) fn check_sub(g: &Hypergraph, f: &Hypergraph) -> Result<EdgeSet> {
    check_four(g)?;
    check_four(f)?;
    if f.n() != g.n() {
        return Err(ProplabError::NotSubhypergraph(format!("F has {} vertices, G has {}", f.n(), g.n())));
    }
    g.edge_set_of(f).map_err(|e| ProplabError::NotSubhypergraph(e.to_string()))
}

pub fn decomposition(
    g: &Hypergraph,
    f: &Hypergraph,
    partition: &VertexPartition,
    p: f64,
    consts: &PaperConstants,
) -> Result<DecompositionReport> {
    check_p(p)?;
    let f_in_g = check_sub(g, f)?;
    check_partition4(g, partition)?;
    let n = g.n();
    let nf = n as f64;
    let (eps1, eps2) = (to_f64(consts.eps1), to_f64(consts.eps2));

    let low = low_pairs(g, partition, p, consts.alpha)?;

    let b: [EdgeSet; 4] = std::array::from_fn(|class| {
        EdgeSet::filter(f, |_, e| e.iter().filter(|&&v| partition.class_of(v) == class).count() >= 2)
    });

    let f_mask = f_in_g.mask();
    let m = EdgeSet::filter(g, |i, e| !f_mask[i] && Hypergraph::is_crossing(e, partition));

    let in_a1 = members(partition, 0);
    let l = f.shadow_graph().induced(&in_a1);

    let thresholds = Thresholds {
        low_pair: low.threshold,
        big_l_degree: eps1 * nf,
        crossing_in_f: eps2 * p * nf.powi(3),
        eps1_n_below_one: eps1 * nf < 1.0,
        eps2_pn3_below_one: eps2 * p * nf.powi(3) < 1.0,
    };

    let a1 = partition.class_members(0);
    let (c, d): (Vec<Vertex>, Vec<Vertex>) =
        a1.iter().partition(|&&x| l.degree(x) as f64 >= thresholds.big_l_degree);
    let mut crossing_in_f = vec![0usize; n];
    for e in f.edges() {
        if Hypergraph::is_crossing(e, partition) {
            for &v in e {
                crossing_in_f[v as usize] += 1;
            }
        }
    }
    let (c1, c2): (Vec<Vertex>, Vec<Vertex>) =
        c.iter().partition(|&&x| crossing_in_f[x as usize] as f64 >= thresholds.crossing_in_f);

    let mut in_c = vec![false; n];
    let mut in_c1 = vec![false; n];
    let mut in_c2 = vec![false; n];
    for &x in &c {
        in_c[x as usize] = true;
    }
    for &x in &c1 {
        in_c1[x as usize] = true;
    }
    for &x in &c2 {
        in_c2[x as usize] = true;
    }
    let meets = |e: &[Vertex], set: &[bool]| e.iter().filter(|&&v| set[v as usize]).count();
    let mut parts: [Vec<u32>; 3] = Default::default();
    for i in b[0].iter() {
        let e = f.edge(i);
        let at_most_3_in_c = meets(e, &in_c) <= 3;
        let part = if at_most_3_in_c && meets(e, &in_c1) >= 1 {
            0
        } else if at_most_3_in_c && meets(e, &in_c2) >= 1 {
            1
        } else {
            2
        };
        parts[part].push(i as u32);
    }
    let b1_parts = parts.map(|members| EdgeSet::from_sorted(f.len(), members));

    Ok(DecompositionReport {
        low_pairs: low.pairs,
        b,
        m,
        l,
        c,
        d,
        c1,
        c2,
        b1_parts,
        constants: DecompositionConstants {
            alpha: consts.alpha,
            eps1,
            eps2,
            eps3: to_f64(consts.eps3),
            delta: to_f64(consts.delta),
        },
        thresholds,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Prop9Sets {
    /// `|K_{v,ℰ}[S, Q]|`: candidate quadruples.
    pub k_size: u64,
    /// `G_{v,ℰ}[S, Q]`: the candidates that are edges of `G`.
    pub g_set: EdgeSet,
}

/// `K_{v,ℰ}[S, Q] = {xuwz : x ∈ S, uwz ∈ Q, ∃W ∈ ℰ, x ∈ W, u, w, z ∉ W}`
/// and `G_{v,ℰ}[S, Q] = K ∩ G`.
///
/// Every `W ∈ ℰ` must contain `v` and a vertex of `S`, every `x ∈ S` must
/// lie in some `W`, and every triple of `Q` must lie in the link of `v`.
pub fn prop9_sets(
    g: &Hypergraph,
    v: Vertex,
    s: &[Vertex],
    e: &EdgeSet,
    q: &Hypergraph,
) -> Result<Prop9Sets> {
    check_four(g)?;
    g.check_vertex(v)?;
    if e.universe() != g.len() {
        return Err(ProplabError::Prop9(format!("ℰ is over {} edges, G has {}", e.universe(), g.len())));
    }
    if q.k() != 3 || q.n() != g.n() {
        return Err(ProplabError::Prop9(format!("Q must be 3-uniform on {} vertices", g.n())));
    }
    let mut in_s = vec![false; g.n()];
    for &x in s {
        g.check_vertex(x)?;
        in_s[x as usize] = true;
    }
    for w in e.iter() {
        let edge = g.edge(w);
        if !edge.contains(&v) || !edge.iter().any(|&x| x != v && in_s[x as usize]) {
            return Err(ProplabError::Prop9(format!("ℰ edge {edge:?} must contain {v} and a vertex of S")));
        }
    }
    let mut certifiers: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for w in e.iter() {
        for &x in g.edge(w) {
            if in_s[x as usize] {
                certifiers[x as usize].push(w);
            }
        }
    }
    if let Some(&x) = s.iter().find(|&&x| certifiers[x as usize].is_empty()) {
        return Err(ProplabError::Prop9(format!("no edge of ℰ contains {x} ∈ S")));
    }
    let mut with_v = [0 as Vertex; 4];
    for t in q.edges() {
        with_v[..3].copy_from_slice(t);
        with_v[3] = v;
        if t.contains(&v) || !g.contains(&with_v) {
            return Err(ProplabError::Prop9(format!("Q triple {t:?} is not in the link of {v}")));
        }
    }

    let mut quads: FxHashSet<[Vertex; 4]> = FxHashSet::default();
    let mut quad = [0 as Vertex; 4];
    let mut xs: Vec<Vertex> = s.to_vec();
    xs.sort_unstable();
    xs.dedup();
    for &x in &xs {
        for t in q.edges() {
            let certified = certifiers[x as usize]
                .iter()
                .any(|&w| !g.edge(w).iter().any(|u| t.contains(u)));
            if certified {
                quad[..3].copy_from_slice(t);
                quad[3] = x;
                quad.sort_unstable();
                quads.insert(quad);
            }
        }
    }
    let members = quads.iter().filter_map(|quad| g.index_of_sorted(quad)).map(|i| i as u32).collect();
    Ok(Prop9Sets { k_size: quads.len() as u64, g_set: EdgeSet::from_unsorted(g.len(), members) })
}
