use serde::Serialize;

use crate::hypercore::{PairGraph, Vertex};

/// A 2-coloring of a graph's vertices and the edges it cuts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BipartiteHalf {
    pub side: Vec<bool>,
    pub cut: PairGraph,
}

/// A bipartite subgraph `R` with `|R| >= |P|/2`.
///
/// Vertices are placed in index order on the side holding fewer of their
/// already-placed neighbors, then any vertex with more neighbors on its own
/// side than across is flipped until none remains. Every flip strictly grows
/// the cut, and at the end each vertex has at least half of its edges
/// crossing, which gives the bound.
pub fn bipartite_half(p: &PairGraph) -> BipartiteHalf {
    let n = p.n();
    let mut side = vec![false; n];
    for v in 0..n {
        let same_if_false = p.neighbors(v as Vertex).iter().filter(|&&u| (u as usize) < v && !side[u as usize]).count();
        let same_if_true = p.neighbors(v as Vertex).iter().filter(|&&u| (u as usize) < v && side[u as usize]).count();
        side[v] = same_if_true < same_if_false;
    }
    loop {
        let mut flipped = false;
        for v in 0..n {
            let same = p.neighbors(v as Vertex).iter().filter(|&&u| side[u as usize] == side[v]).count();
            if 2 * same > p.degree(v as Vertex) {
                side[v] = !side[v];
                flipped = true;
            }
        }
        if !flipped {
            break;
        }
    }
    let pairs = p
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| side[u as usize] != side[v as usize])
        .collect();
    BipartiteHalf { cut: PairGraph::from_pairs_unchecked(n, pairs), side }
}
