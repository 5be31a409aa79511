//! Generalized triangles `T_k` and the `T̂` gadget.
//!
//! A copy of `T_k` in a host is an unordered triple of edges `{e1, e2, e3}`
//! with `|e1 ∩ e2| = k - 1`, `e1 △ e2 = {a, b} ⊆ e3` and `e3` disjoint from
//! the core `e1 ∩ e2`. Copies are identified by their edge triple.
//!
//! The kernel walks every unordered pair of edges sharing a `(k-1)`-core
//! (via the core index) and looks up the edges through the apex pair `{a, b}`
//! (via the pair index). For `k >= 3` the core pair of a copy is the unique
//! pair of its edges meeting in `k - 1` vertices, so each copy is seen once;
//! for `k = 2` every pair of a triangle shares a vertex and only the visit
//! whose third edge has the largest index is kept.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::hypercore::{EdgeSet, Hypergraph, HypergraphError, Vertex, VertexPartition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MotifError {
    #[error("generalized triangles need uniformity 2..=4 here, got {0}")]
    UnsupportedUniformity(usize),
    #[error("edge set is over a universe of {got} edges, host has {host}")]
    ForeignEdgeSet { got: usize, host: usize },
    #[error("B1 edge #{index} {edge:?} has fewer than two vertices in A1")]
    MalformedB1 { index: usize, edge: Vec<Vertex> },
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

pub type Result<T, E = MotifError> = std::result::Result<T, E>;

/// An embedded copy of `T_k`: edge indices in the host, in roles
/// `[e1, e2, e3]` with `e1 ∩ e2` the core and `e3` the edge through the apexes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TCopy {
    pub edges: [usize; 3],
    pub core: Vec<Vertex>,
    pub apexes: (Vertex, Vertex),
    pub tails: Vec<Vertex>,
}

/// A `T̂` gadget: anchors `w1, w2 ∈ A₁`, a triple `(x, y, z)` such that
/// `w1xyz` and `w2xyz` are crossing edges, and a certifying edge `W ∈ B₁`
/// (host index) with `w1, w2 ∈ W` and `x, y, z ∉ W`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct THat {
    pub anchors: (Vertex, Vertex),
    pub triple: [Vertex; 3],
    pub certifier: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MotifWitness {
    Triangle(TCopy),
    Gadget(THat),
}

fn check_k(h: &Hypergraph) -> Result<()> {
    if (2..=4).contains(&h.k()) {
        Ok(())
    } else {
        Err(MotifError::UnsupportedUniformity(h.k()))
    }
}

/// The canonical `T_k` on `0..2k-1`: `{0..k-1}`, `{0..k-2, k}`, `{k-1..2k-2}`.
pub fn generalized_triangle(k: usize) -> Result<Hypergraph> {
    if !(2..=8).contains(&k) {
        return Err(MotifError::UnsupportedUniformity(k));
    }
    let k32 = k as Vertex;
    let first: Vec<Vertex> = (0..k32).collect();
    let second: Vec<Vertex> = (0..k32 - 1).chain([k32]).collect();
    let third: Vec<Vertex> = (k32 - 1..2 * k32 - 1).collect();
    Ok(Hypergraph::new(2 * k - 1, k, [first, second, third])?)
}

/// Visits the copies whose first edge is `e1` (see the module docs for why
/// each copy is visited exactly once over all `e1`).
fn visit_from<B>(
    h: &Hypergraph,
    e1: usize,
    alive: Option<&[bool]>,
    f: &mut impl FnMut(usize, usize, usize, &[Vertex], Vertex, Vertex) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let k = h.k();
    let live = |i: usize| alive.map_or(true, |a| a[i]);
    if !live(e1) {
        return ControlFlow::Continue(());
    }
    let edge = h.edge(e1);
    let mut core = Vec::with_capacity(k);
    for skip in 0..k {
        let a = edge[skip];
        core.clear();
        core.extend(edge.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v));
        for &(b, e2) in h.completions(&core) {
            let e2 = e2 as usize;
            if e2 <= e1 || !live(e2) {
                continue;
            }
            for &e3 in h.pair_edges(a, b) {
                let e3 = e3 as usize;
                if !live(e3) || (k == 2 && e3 < e2) {
                    continue;
                }
                if h.edge(e3).iter().any(|v| core.contains(v)) {
                    continue;
                }
                f(e1, e2, e3, &core, a, b)?;
            }
        }
    }
    ControlFlow::Continue(())
}

fn witness(h: &Hypergraph, e1: usize, e2: usize, e3: usize, core: &[Vertex], a: Vertex, b: Vertex) -> TCopy {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    TCopy {
        edges: [e1, e2, e3],
        core: core.to_vec(),
        apexes: (a, b),
        tails: h.edge(e3).iter().copied().filter(|&v| v != a && v != b).collect(),
    }
}

/// Some copy of `T_k` in `h`, if one exists.
pub fn find_t(h: &Hypergraph) -> Result<Option<MotifWitness>> {
    check_k(h)?;
    for e1 in 0..h.len() {
        let found = visit_from(h, e1, None, &mut |e1, e2, e3, core, a, b| {
            ControlFlow::Break(witness(h, e1, e2, e3, core, a, b))
        });
        if let ControlFlow::Break(w) = found {
            return Ok(Some(MotifWitness::Triangle(w)));
        }
    }
    Ok(None)
}

pub fn is_t_free(h: &Hypergraph) -> Result<bool> {
    Ok(find_t(h)?.is_none())
}

/// Number of copies of `T_k` (distinct edge triples).
pub fn count_t(h: &Hypergraph) -> Result<u64> {
    check_k(h)?;
    Ok((0..h.len())
        .into_par_iter()
        .map(|e1| {
            let mut c = 0u64;
            let _ = visit_from::<()>(h, e1, None, &mut |_, _, _, _, _, _| {
                c += 1;
                ControlFlow::Continue(())
            });
            c
        })
        .sum())
}

/// Every copy as an edge-index triple in roles `[e1, e2, e3]`, in kernel
/// order (by `e1`, then core, then `e2`, then `e3`).
pub fn enumerate_copies(h: &Hypergraph) -> Result<Vec<[u32; 3]>> {
    enumerate_copies_limited(h, usize::MAX).map(|c| c.expect("no limit"))
}

/// Like [`enumerate_copies`] but gives up (returning `None`) once more than
/// `limit` copies have been found.
pub fn enumerate_copies_limited(h: &Hypergraph, limit: usize) -> Result<Option<Vec<[u32; 3]>>> {
    check_k(h)?;
    let mut out = Vec::new();
    for e1 in 0..h.len() {
        let flow = visit_from(h, e1, None, &mut |e1, e2, e3, _, _, _| {
            if out.len() == limit {
                return ControlFlow::Break(());
            }
            out.push([e1 as u32, e2 as u32, e3 as u32]);
            ControlFlow::Continue(())
        });
        if flow.is_break() {
            return Ok(None);
        }
    }
    Ok(Some(out))
}

/// Calls `f` once per copy whose three edges are all alive.
pub fn for_each_live_copy(h: &Hypergraph, alive: &[bool], mut f: impl FnMut([u32; 3])) {
    for e1 in 0..h.len() {
        let _ = visit_from::<()>(h, e1, Some(alive), &mut |e1, e2, e3, _, _, _| {
            f([e1 as u32, e2 as u32, e3 as u32]);
            ControlFlow::Continue(())
        });
    }
}

/// The copies containing edge `e` among live edges (`e` itself is treated
/// as alive), as ascending index triples without repeats.
pub fn copies_through_edge(h: &Hypergraph, e: usize, alive: &[bool]) -> Vec<[u32; 3]> {
    let k = h.k();
    let live = |i: usize| i == e || alive[i];
    let edge = h.edge(e);
    let mut out = Vec::new();
    let mut push = |x: usize, y: usize, z: usize| {
        let mut t = [x as u32, y as u32, z as u32];
        t.sort_unstable();
        out.push(t);
    };
    // `e` as one of the two edges sharing the core
    let mut core = Vec::with_capacity(k);
    for skip in 0..k {
        let a = edge[skip];
        core.clear();
        core.extend(edge.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v));
        for &(b, e2) in h.completions(&core) {
            let e2 = e2 as usize;
            if e2 == e || !live(e2) {
                continue;
            }
            for &e3 in h.pair_edges(a, b) {
                let e3 = e3 as usize;
                if live(e3) && !h.edge(e3).iter().any(|v| core.contains(v)) {
                    push(e, e2, e3);
                }
            }
        }
    }
    // `e` as the edge through the apex pair
    let mut swapped = Vec::with_capacity(k);
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let (a, b) = (edge[i], edge[j]);
            for &g in &h.incidence()[a as usize] {
                let g = g as usize;
                if !live(g) || g == e {
                    continue;
                }
                let ge = h.edge(g);
                if ge.iter().any(|&v| v != a && edge.contains(&v)) {
                    continue;
                }
                swapped.clear();
                swapped.extend(ge.iter().map(|&v| if v == a { b } else { v }));
                swapped.sort_unstable();
                if let Some(g2) = h.index_of_sorted(&swapped) {
                    // each unordered apex pair is reached from both ends
                    if live(g2) && a < b {
                        push(g, g2, e);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn check_universe(h: &Hypergraph, set: &EdgeSet) -> Result<()> {
    if set.universe() == h.len() {
        Ok(())
    } else {
        Err(MotifError::ForeignEdgeSet { got: set.universe(), host: h.len() })
    }
}

/// Number of copies of `T_k` using at least one edge of `through`.
pub fn t_through_edges(h: &Hypergraph, through: &EdgeSet) -> Result<u64> {
    check_k(h)?;
    check_universe(h, through)?;
    let mask = through.mask();
    Ok((0..h.len())
        .into_par_iter()
        .map(|e1| {
            let mut c = 0u64;
            let _ = visit_from::<()>(h, e1, None, &mut |e1, e2, e3, _, _, _| {
                if mask[e1] || mask[e2] || mask[e3] {
                    c += 1;
                }
                ControlFlow::Continue(())
            });
            c
        })
        .sum())
}

/// Anchor pairs of `B₁` with their certifying edges.
fn anchor_pairs(
    g: &Hypergraph,
    partition: &VertexPartition,
    b1: &EdgeSet,
) -> Result<BTreeMap<(Vertex, Vertex), Vec<usize>>> {
    if g.k() != 4 {
        return Err(MotifError::UnsupportedUniformity(g.k()));
    }
    g.check_partition(partition)?;
    check_universe(g, b1)?;
    let mut pairs: BTreeMap<(Vertex, Vertex), Vec<usize>> = BTreeMap::new();
    for w in b1.iter() {
        let edge = g.edge(w);
        let in_a1: Vec<Vertex> = edge.iter().copied().filter(|&v| partition.class_of(v) == 0).collect();
        if in_a1.len() < 2 {
            return Err(MotifError::MalformedB1 { index: w, edge: edge.to_vec() });
        }
        for i in 0..in_a1.len() {
            for j in i + 1..in_a1.len() {
                pairs.entry((in_a1[i], in_a1[j])).or_default().push(w);
            }
        }
    }
    Ok(pairs)
}

fn visit_gadgets(
    g: &Hypergraph,
    partition: &VertexPartition,
    b1: &EdgeSet,
    mut f: impl FnMut((Vertex, Vertex), [Vertex; 3], usize),
) -> Result<()> {
    let pairs = anchor_pairs(g, partition, b1)?;
    let mut with_w2 = [0 as Vertex; 4];
    for (&(w1, w2), certifiers) in &pairs {
        for &i in &g.incidence()[w1 as usize] {
            let e = g.edge(i as usize);
            if !Hypergraph::is_crossing(e, partition) {
                continue;
            }
            let mut triple = [0 as Vertex; 3];
            let mut t = 0;
            for &v in e {
                if v != w1 {
                    triple[t] = v;
                    t += 1;
                }
            }
            with_w2[..3].copy_from_slice(&triple);
            with_w2[3] = w2;
            if g.edge_index(&with_w2).is_none() {
                continue;
            }
            let cert = certifiers
                .iter()
                .copied()
                .find(|&w| !g.edge(w).iter().any(|v| triple.contains(v)));
            if let Some(w) = cert {
                f((w1, w2), triple, w);
            }
        }
    }
    Ok(())
}

/// For every anchor pair `(w1, w2)` taken from some `W ∈ B₁` with both in
/// `A₁`: the number of triples `(x, y, z)` such that `w1xyz`, `w2xyz` are
/// crossing edges of `g` and some certifying `W` avoids `x, y, z`.
/// Anchor pairs with no certifying edge do not appear.
pub fn count_that(
    g: &Hypergraph,
    partition: &VertexPartition,
    b1: &EdgeSet,
) -> Result<BTreeMap<(Vertex, Vertex), u64>> {
    let mut counts = BTreeMap::new();
    for &pair in anchor_pairs(g, partition, b1)?.keys() {
        counts.insert(pair, 0);
    }
    visit_gadgets(g, partition, b1, |pair, _, _| {
        *counts.get_mut(&pair).expect("anchor pair registered") += 1;
    })?;
    Ok(counts)
}

/// Every `T̂` gadget with its first certifying edge (lowest index).
pub fn that_gadgets(g: &Hypergraph, partition: &VertexPartition, b1: &EdgeSet) -> Result<Vec<THat>> {
    let mut out = Vec::new();
    visit_gadgets(g, partition, b1, |anchors, triple, certifier| {
        out.push(THat { anchors, triple, certifier })
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::turan_hypergraph;

    #[test]
    fn templates() {
        let t2 = generalized_triangle(2).unwrap();
        assert_eq!(t2.edges().collect::<Vec<_>>(), vec![&[0, 1][..], &[0, 2], &[1, 2]]);
        let t3 = generalized_triangle(3).unwrap();
        assert_eq!(t3.n(), 5);
        assert_eq!(t3.edges().collect::<Vec<_>>(), vec![&[0, 1, 2][..], &[0, 1, 3], &[2, 3, 4]]);
        let t4 = generalized_triangle(4).unwrap();
        assert_eq!(
            t4.edges().collect::<Vec<_>>(),
            vec![&[0, 1, 2, 3][..], &[0, 1, 2, 4], &[3, 4, 5, 6]]
        );
        assert!(generalized_triangle(1).is_err());
    }

    #[test]
    fn find_examples() {
        let t4 = generalized_triangle(4).unwrap();
        let Some(MotifWitness::Triangle(w)) = find_t(&t4).unwrap() else {
            panic!("T4 contains itself");
        };
        assert_eq!(w.edges, [0, 1, 2]);
        assert_eq!(w.core, vec![0, 1, 2]);
        assert_eq!(w.apexes, (3, 4));
        assert_eq!(w.tails, vec![5, 6]);
        assert!(find_t(&turan_hypergraph(12, 4).unwrap()).unwrap().is_none());
        assert!(find_t(&Hypergraph::complete(7, 4).unwrap()).unwrap().is_some());
        let five = Hypergraph::complete(5, 5).unwrap();
        assert!(matches!(find_t(&five), Err(MotifError::UnsupportedUniformity(5))));
    }

    #[test]
    fn count_examples() {
        for k in 2..=4 {
            assert_eq!(count_t(&generalized_triangle(k).unwrap()).unwrap(), 1);
        }
        // frozen from an exhaustive scan of all C(10, 3) edge triples
        assert_eq!(count_t(&Hypergraph::complete(5, 3).unwrap()).unwrap(), 30);
        // 35 cores x 6 apex pairs x 1 completing edge
        assert_eq!(count_t(&Hypergraph::complete(7, 4).unwrap()).unwrap(), 210);
        assert_eq!(count_t(&Hypergraph::complete(6, 2).unwrap()).unwrap(), 20);
        let two = Hypergraph::new(7, 4, [[0, 1, 2, 3], [0, 1, 2, 4]]).unwrap();
        assert_eq!(count_t(&two).unwrap(), 0);
    }

    #[test]
    fn through_edges_examples() {
        let t4 = generalized_triangle(4).unwrap();
        assert_eq!(t_through_edges(&t4, &EdgeSet::full(&t4)).unwrap(), 1);
        assert_eq!(t_through_edges(&t4, &EdgeSet::empty(&t4)).unwrap(), 0);
        assert_eq!(t_through_edges(&t4, &EdgeSet::new(&t4, [2]).unwrap()).unwrap(), 1);
        let k = Hypergraph::complete(6, 3).unwrap();
        assert_eq!(
            t_through_edges(&k, &EdgeSet::full(&k)).unwrap(),
            count_t(&k).unwrap()
        );
        assert!(t_through_edges(&t4, &EdgeSet::full(&k)).is_err());
    }

    #[test]
    fn copies_through_edge_matches_filtered_enumeration() {
        for (n, k) in [(6, 2), (6, 3), (8, 4)] {
            let h = Hypergraph::complete(n, k).unwrap();
            let all = enumerate_copies(&h).unwrap();
            let mut alive = vec![true; h.len()];
            for i in (0..h.len()).step_by(3) {
                alive[i] = false;
            }
            for e in 0..h.len() {
                let mut expect: Vec<[u32; 3]> = all
                    .iter()
                    .filter(|t| t.contains(&(e as u32)))
                    .filter(|t| t.iter().all(|&i| i as usize == e || alive[i as usize]))
                    .map(|t| {
                        let mut t = *t;
                        t.sort_unstable();
                        t
                    })
                    .collect();
                expect.sort_unstable();
                assert_eq!(copies_through_edge(&h, e, &alive), expect, "n={n} k={k} e={e}");
            }
        }
    }

    #[test]
    fn gadget_counts_on_complete_host() {
        let g = Hypergraph::complete(16, 4).unwrap();
        let p = VertexPartition::equal_parts(16, 4);
        assert!(count_that(&g, &p, &EdgeSet::empty(&g)).unwrap().is_empty());
        // W = {0, 1, 4, 5}: anchors 0, 1 in A1, two vertices in A2
        let w = g.edge_index(&[0, 1, 4, 5]).unwrap();
        let b1 = EdgeSet::new(&g, [w]).unwrap();
        let counts = count_that(&g, &p, &b1).unwrap();
        assert_eq!(counts.len(), 1);
        assert_eq!(counts[&(0, 1)], 2 * 4 * 4);
        // cross-check by direct enumeration over A2 x A3 x A4
        let mut direct = 0;
        for x in 4..8u32 {
            for y in 8..12u32 {
                for z in 12..16u32 {
                    if ![x, y, z].iter().any(|v| [0, 1, 4, 5].contains(v)) {
                        direct += 1;
                    }
                }
            }
        }
        assert_eq!(direct, 32);
        assert_eq!(that_gadgets(&g, &p, &b1).unwrap().len(), 32);

        let bad = EdgeSet::new(&g, [g.edge_index(&[0, 4, 8, 12]).unwrap()]).unwrap();
        assert!(matches!(count_that(&g, &p, &bad), Err(MotifError::MalformedB1 { .. })));
    }

    #[test]
    fn gadgets_without_crossing_edges() {
        // every edge has two A1 vertices: nothing is crossing
        let g = Hypergraph::new(8, 4, [[0, 1, 2, 4], [0, 1, 3, 6], [0, 1, 5, 7]]).unwrap();
        let p = VertexPartition::from_classes(8, &[vec![0, 1], vec![2, 3], vec![4, 5], vec![6, 7]])
            .unwrap();
        let counts = count_that(&g, &p, &EdgeSet::full(&g)).unwrap();
        assert_eq!(counts.values().copied().collect::<Vec<_>>(), vec![0]);
    }
}
