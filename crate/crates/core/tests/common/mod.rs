//! Strategies and brute-force oracles shared by the integration tests.
//! The oracles use only plain vertex lists, never the library's indices.
#![allow(dead_code)]

use std::collections::BTreeSet;

use mantel4::{Hypergraph, Vertex, VertexPartition};
use proptest::prelude::*;
use proptest::sample::subsequence;

/// Random `k`-uniform hypergraphs on `n ∈ ns` vertices with at most
/// `max_edges` edges (duplicates collapse).
pub fn arb_hypergraph(
    ns: std::ops::RangeInclusive<usize>,
    k: usize,
    max_edges: usize,
) -> impl Strategy<Value = Hypergraph> {
    ns.prop_flat_map(move |n| {
        let all: Vec<Vertex> = (0..n as Vertex).collect();
        prop::collection::vec(subsequence(all, k), 0..=max_edges)
            .prop_map(move |edges| Hypergraph::new(n, k, edges).unwrap())
    })
}

pub fn arb_partition(n: usize, r: usize) -> impl Strategy<Value = VertexPartition> {
    prop::collection::vec(0..r as u8, n).prop_map(move |labels| VertexPartition::new(r, labels).unwrap())
}

pub fn edge_lists(h: &Hypergraph) -> Vec<BTreeSet<Vertex>> {
    h.edges().map(|e| e.iter().copied().collect()).collect()
}

/// Whether `{a, b, c}` forms a generalized triangle with `c` through the
/// apexes of `a` and `b`.
fn triangle_with_third(a: &BTreeSet<Vertex>, b: &BTreeSet<Vertex>, c: &BTreeSet<Vertex>, k: usize) -> bool {
    let core: BTreeSet<_> = a.intersection(b).copied().collect();
    if core.len() != k - 1 {
        return false;
    }
    let apexes: BTreeSet<_> = a.symmetric_difference(b).copied().collect();
    apexes.is_subset(c) && core.is_disjoint(c)
}

/// All edge-index triples `i < j < l` that form a copy of `T_k`.
pub fn naive_copies(h: &Hypergraph) -> Vec<[usize; 3]> {
    let edges = edge_lists(h);
    let k = h.k();
    let m = edges.len();
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for l in j + 1..m {
                let (a, b, c) = (&edges[i], &edges[j], &edges[l]);
                if triangle_with_third(a, b, c, k)
                    || triangle_with_third(a, c, b, k)
                    || triangle_with_third(b, c, a, k)
                {
                    out.push([i, j, l]);
                }
            }
        }
    }
    out
}

/// Largest `T_k`-free edge subset, over all `2^m` subsets.
pub fn naive_max_tfree(h: &Hypergraph) -> usize {
    let m = h.len();
    assert!(m <= 24);
    let masks: Vec<u32> = naive_copies(h).iter().map(|t| t.iter().map(|&e| 1u32 << e).sum()).collect();
    (0u32..1 << m)
        .filter(|s| masks.iter().all(|&c| s & c != c))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Crossing edges of a labeling with `r` classes.
pub fn naive_cut(h: &Hypergraph, labels: &[u8], r: usize) -> usize {
    h.edges()
        .filter(|e| {
            let classes: BTreeSet<u8> = e.iter().map(|&v| labels[v as usize]).collect();
            classes.len() == r && e.len() == r
        })
        .count()
}

/// Best cut over all `r^n` labelings.
pub fn naive_max_cut(h: &Hypergraph, r: usize) -> usize {
    let n = h.n();
    let total = (r as u64).pow(n as u32);
    let mut labels = vec![0u8; n];
    let mut best = 0;
    for code in 0..total {
        let mut c = code;
        for slot in labels.iter_mut() {
            *slot = (c % r as u64) as u8;
            c /= r as u64;
        }
        best = best.max(naive_cut(h, &labels, r));
    }
    best
}
