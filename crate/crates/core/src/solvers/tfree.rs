//! Maximum `T_k`-free edge subsets.
//!
//! Both solvers work on the copies of `T_k` as edge triples: a subset is
//! `T_k`-free exactly when it contains no triple entirely.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::cut::max_cut_local;
use super::{Budget, Meter, Result, SolveResult, SolveStats, SolverError, Witness};
use crate::hypercore::{EdgeSet, Hypergraph};
use crate::motifs::{copies_through_edge, enumerate_copies_limited, for_each_live_copy};
use crate::randgen::TrialSeed;

/// Copy count above which the exact solver refuses an instance.
pub const MAX_EXACT_COPIES: usize = 10_000_000;
/// Restarts of the repair heuristic used as the exact solver's incumbent.
const INCUMBENT_RESTARTS: usize = 4;
/// Copy count above which the repair heuristic skips the swap search.
pub const MAX_SWAP_COPIES: usize = 2_000_000;
/// Perturbation rounds of the swap search per edge of the host, per start.
const SWAP_ROUNDS_PER_EDGE: usize = 2;
/// Cap on perturbation rounds per start.
const MAX_SWAP_ROUNDS: usize = 1_000;
/// Copy visits allowed per start; a round visits each copy a few times.
const SWAP_WORK: usize = 50_000_000;

/// One greedy pass: repeatedly delete a live edge lying in the most live
/// copies, then re-add deleted edges that no longer close a copy.
/// `rank` orders ties (lower rank is deleted first) and the re-add pass.
fn repair_pass(h: &Hypergraph, rank: &[u32]) -> Vec<bool> {
    let m = h.len();
    let mut alive = vec![true; m];
    let mut counts = vec![0u32; m];
    for_each_live_copy(h, &alive, |t| {
        for e in t {
            counts[e as usize] += 1;
        }
    });
    let mut heap: BinaryHeap<(u32, Reverse<u32>, u32)> = (0..m)
        .filter(|&e| counts[e] > 0)
        .map(|e| (counts[e], Reverse(rank[e]), e as u32))
        .collect();
    while let Some((c, _, e)) = heap.pop() {
        let e = e as usize;
        if !alive[e] || c != counts[e] {
            continue;
        }
        for t in copies_through_edge(h, e, &alive) {
            for f in t.into_iter().map(|f| f as usize).filter(|&f| f != e) {
                counts[f] -= 1;
                if counts[f] > 0 {
                    heap.push((counts[f], Reverse(rank[f]), f as u32));
                }
            }
        }
        alive[e] = false;
        counts[e] = 0;
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_unstable_by_key(|&e| rank[e]);
    for e in order {
        if !alive[e] && copies_through_edge(h, e, &alive).is_empty() {
            alive[e] = true;
        }
    }
    alive
}

/// Swap search over a `T_k`-free subset. `block[e]` counts the copies
/// through `e` whose other two edges are kept, so a dropped edge can be
/// re-added exactly when its count is zero.
struct Swaps {
    copies: Vec<[u32; 3]>,
    edge_copies: Vec<Vec<u32>>,
    alive: Vec<bool>,
    block: Vec<u32>,
    size: usize,
    // scratch
    hits: Vec<u32>,
    stamp: Vec<u32>,
    clock: u32,
}

impl Swaps {
    fn new(copies: Vec<[u32; 3]>, m: usize) -> Self {
        let mut edge_copies = vec![Vec::new(); m];
        for (c, t) in copies.iter().enumerate() {
            for &e in t {
                edge_copies[e as usize].push(c as u32);
            }
        }
        Swaps {
            copies,
            edge_copies,
            alive: vec![false; m],
            block: vec![0; m],
            size: 0,
            hits: vec![0; m],
            stamp: vec![0; m],
            clock: 0,
        }
    }

    fn load(&mut self, alive: &[bool]) {
        self.alive.copy_from_slice(alive);
        self.size = alive.iter().filter(|&&a| a).count();
        self.block.fill(0);
        for t in &self.copies {
            let kept = t.iter().filter(|&&e| self.alive[e as usize]).count();
            if kept == 2 {
                let e = t.iter().find(|&&e| !self.alive[e as usize]).expect("one dropped edge");
                self.block[*e as usize] += 1;
            }
        }
    }

    fn others(&self, c: u32, e: usize) -> (usize, usize) {
        let t = self.copies[c as usize];
        let mut it = t.into_iter().map(|f| f as usize).filter(|&f| f != e);
        (it.next().expect("three edges"), it.next().expect("three edges"))
    }

    fn add(&mut self, e: usize) {
        debug_assert!(!self.alive[e] && self.block[e] == 0);
        self.alive[e] = true;
        self.size += 1;
        for i in 0..self.edge_copies[e].len() {
            let (u, w) = self.others(self.edge_copies[e][i], e);
            if self.alive[u] && !self.alive[w] {
                self.block[w] += 1;
            } else if self.alive[w] && !self.alive[u] {
                self.block[u] += 1;
            }
        }
    }

    fn remove(&mut self, e: usize) {
        debug_assert!(self.alive[e]);
        self.alive[e] = false;
        self.size -= 1;
        for i in 0..self.edge_copies[e].len() {
            let (u, w) = self.others(self.edge_copies[e][i], e);
            if self.alive[u] && !self.alive[w] {
                self.block[w] -= 1;
            } else if self.alive[w] && !self.alive[u] {
                self.block[u] -= 1;
            }
        }
    }

    /// Re-adds every dropped edge in `cands` that fits, in order.
    fn fill(&mut self, cands: &[usize]) {
        for &e in cands {
            if !self.alive[e] && self.block[e] == 0 {
                self.add(e);
            }
        }
    }

    /// Tries to drop `x` and add two edges. Returns whether it did.
    fn try_swap(&mut self, x: usize) -> bool {
        let mut freed = Vec::new();
        for &c in &self.edge_copies[x] {
            let (u, w) = self.others(c, x);
            for (a, b) in [(u, w), (w, u)] {
                if self.alive[a] && !self.alive[b] {
                    if self.hits[b] == 0 {
                        freed.push(b);
                    }
                    self.hits[b] += 1;
                }
            }
        }
        freed.retain(|&y| self.hits[y] == self.block[y]);
        let mut pair = None;
        if freed.len() >= 2 {
            for (i, &y) in freed.iter().enumerate() {
                self.clock += 1;
                for &c in &self.edge_copies[y] {
                    let (a, b) = self.others(c, y);
                    if self.alive[a] && a != x {
                        self.stamp[b] = self.clock;
                    }
                    if self.alive[b] && b != x {
                        self.stamp[a] = self.clock;
                    }
                }
                if let Some(&z) = freed[i + 1..].iter().find(|&&z| self.stamp[z] != self.clock) {
                    pair = Some((y, z));
                    break;
                }
            }
        }
        for &c in &self.edge_copies[x] {
            let (u, w) = self.others(c, x);
            self.hits[u] = 0;
            self.hits[w] = 0;
        }
        let Some((y, z)) = pair else { return false };
        self.remove(x);
        self.add(y);
        self.add(z);
        self.fill(&freed);
        true
    }

    /// Applies improving swaps in `order` until a full pass finds none.
    fn descend(&mut self, order: &[usize]) {
        loop {
            let mut improved = false;
            for &x in order {
                if self.alive[x] && self.try_swap(x) {
                    improved = true;
                }
            }
            if !improved {
                return;
            }
        }
    }

    /// Forces a random dropped edge in, dropping one kept edge of every copy
    /// it would close, then refills around the dropped edges.
    fn perturb(&mut self, rng: &mut ChaCha8Rng) {
        let dropped: Vec<usize> = (0..self.alive.len()).filter(|&e| !self.alive[e]).collect();
        let Some(&y) = dropped.get(rng.gen_range(0..dropped.len().max(1))) else { return };
        let mut removed = Vec::new();
        for i in 0..self.edge_copies[y].len() {
            let (u, w) = self.others(self.edge_copies[y][i], y);
            if self.alive[u] && self.alive[w] {
                let r = if rng.gen_bool(0.5) { u } else { w };
                self.remove(r);
                removed.push(r);
            }
        }
        self.add(y);
        let mut cands = Vec::new();
        for &r in &removed {
            for &c in &self.edge_copies[r] {
                let (u, w) = self.others(c, r);
                cands.extend([u, w].into_iter().filter(|&f| f != y && !removed.contains(&f)));
            }
        }
        cands.shuffle(rng);
        self.fill(&cands);
    }

    /// Iterated swap search from `start`: perturb, descend, and keep the
    /// result unless it is smaller than before the perturbation.
    fn run(&mut self, start: &[bool], rounds: usize, rng: &mut ChaCha8Rng) -> Vec<bool> {
        self.load(start);
        let mut order: Vec<usize> = (0..start.len()).collect();
        self.descend(&order);
        let mut best = self.alive.clone();
        let mut best_size = self.size;
        for _ in 0..rounds {
            let (saved, saved_block, saved_size) = (self.alive.clone(), self.block.clone(), self.size);
            self.perturb(rng);
            order.shuffle(rng);
            self.descend(&order);
            if self.size > best_size {
                best_size = self.size;
                best.copy_from_slice(&self.alive);
            }
            if self.size < saved_size {
                self.alive = saved;
                self.block = saved_block;
                self.size = saved_size;
            }
        }
        best
    }
}

/// Re-adds, in index order, every edge outside `alive` that closes no copy.
fn extend(h: &Hypergraph, alive: &mut [bool]) {
    for e in 0..alive.len() {
        if !alive[e] && copies_through_edge(h, e, alive).is_empty() {
            alive[e] = true;
        }
    }
}

/// Heuristic maximum `T_k`-free subset. Candidates are the crossing set of
/// a local cut search with the same seed and restarts, the star of a
/// maximum-degree vertex (edges through one vertex never form a copy) and
/// one greedy pass per restart, which deletes the edge in the most
/// remaining copies until none is left. Restart 0 breaks greedy ties by
/// lowest edge index, later restarts by a random priority drawn from
/// `seed.child(restart)`. Every candidate is extended until no edge fits.
/// When the host has at most [`MAX_SWAP_COPIES`] copies, each candidate is
/// then improved by an iterated swap search (drop one kept edge, add two)
/// with random perturbations. `optimal` is always `false`.
pub fn max_tfree_repair(h: &Hypergraph, seed: TrialSeed, restarts: usize) -> Result<SolveResult> {
    let meter = Meter::new(Budget::unlimited());
    let m = h.len();
    enumerate_copies_limited(h, 0)?;
    let cut = max_cut_local(h, seed, restarts)?;
    let mut nodes = cut.stats.nodes;
    let crossing = h.crossing_edges(cut.partition().expect("cut witness"))?;

    let mut starts: Vec<(Vec<bool>, u64)> = Vec::new();
    let mut mask = vec![false; m];
    for i in crossing.iter() {
        mask[i] = true;
    }
    starts.push((mask, restarts as u64));
    if m > 0 {
        let degrees = h.degrees();
        let center = (0..h.n()).fold(0, |b, v| if degrees[v] > degrees[b] { v } else { b }) as u32;
        let mask = h.edges().map(|e| e.contains(&center)).collect();
        starts.push((mask, restarts as u64 + 1));
    }
    for t in 0..restarts.max(1) {
        let mut rank: Vec<u32> = (0..m as u32).collect();
        if t > 0 {
            rank.shuffle(&mut seed.child(t as u64).rng());
        }
        starts.push((repair_pass(h, &rank), t as u64));
    }

    let mut swaps = enumerate_copies_limited(h, MAX_SWAP_COPIES)?.map(|copies| Swaps::new(copies, m));
    let rounds = swaps.as_ref().map_or(0, |sw| {
        (SWAP_ROUNDS_PER_EDGE * m).min(MAX_SWAP_ROUNDS).min(SWAP_WORK / (3 * sw.copies.len()).max(1))
    });
    let mut best: Option<EdgeSet> = None;
    for (mut alive, stream) in starts {
        extend(h, &mut alive);
        nodes += 1;
        if let Some(sw) = swaps.as_mut() {
            let mut rng = seed.child(stream).child(1).rng();
            alive = sw.run(&alive, rounds, &mut rng);
            nodes += rounds as u64;
        }
        let set = EdgeSet::filter(h, |i, _| alive[i]);
        if best.as_ref().map_or(true, |b| set.len() > b.len()) {
            best = Some(set);
        }
    }
    let best = best.expect("at least one candidate");
    Ok(SolveResult {
        value: best.len(),
        witness: Witness::Edges(best),
        optimal: false,
        stats: SolveStats { nodes, ..meter.stats() },
    })
}

const UNDECIDED: u8 = 0;
const IN: u8 = 1;
const OUT: u8 = 2;

struct Search {
    copies: Vec<[u32; 3]>,
    edge_copies: Vec<Vec<u32>>,
    status: Vec<u8>,
    n_in: usize,
    n_undecided: usize,
    copy_in: Vec<u8>,
    copy_out: Vec<u8>,
    trail: Vec<u32>,
    best: usize,
    best_status: Option<Vec<u8>>,
    meter: Meter,
    // scratch for bounding and branching
    active: Vec<u32>,
    words: usize,
    adj: Vec<u64>,
    adj_list: Vec<Vec<u32>>,
    touched: Vec<u32>,
    covered: Vec<bool>,
}

impl Search {
    fn set(&mut self, e: usize, s: u8) {
        debug_assert_eq!(self.status[e], UNDECIDED);
        self.status[e] = s;
        self.n_undecided -= 1;
        if s == IN {
            self.n_in += 1;
        }
        self.trail.push(e as u32);
        for &c in &self.edge_copies[e] {
            if s == IN {
                self.copy_in[c as usize] += 1;
            } else {
                self.copy_out[c as usize] += 1;
            }
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let e = self.trail.pop().expect("nonempty trail") as usize;
            let s = std::mem::replace(&mut self.status[e], UNDECIDED);
            self.n_undecided += 1;
            if s == IN {
                self.n_in -= 1;
            }
            for &c in &self.edge_copies[e] {
                if s == IN {
                    self.copy_in[c as usize] -= 1;
                } else {
                    self.copy_out[c as usize] -= 1;
                }
            }
        }
    }

    /// Includes `e` and excludes the last edge of every copy that now has
    /// two included edges.
    fn include(&mut self, e: usize) {
        self.set(e, IN);
        for i in 0..self.edge_copies[e].len() {
            let c = self.edge_copies[e][i] as usize;
            if self.copy_out[c] == 0 && self.copy_in[c] == 2 {
                let f = self.copies[c]
                    .into_iter()
                    .find(|&f| self.status[f as usize] == UNDECIDED)
                    .expect("a copy never has all three edges included");
                self.set(f as usize, OUT);
            }
        }
    }

    fn add_conflict(&mut self, a: u32, b: u32) {
        let (ai, bi) = (a as usize, b as usize);
        let bit = |x: usize, y: usize| (x * self.words + y / 64, 1u64 << (y % 64));
        let (w, mask) = bit(ai, bi);
        if self.adj[w] & mask != 0 {
            return;
        }
        self.adj[w] |= mask;
        let (w, mask) = bit(bi, ai);
        self.adj[w] |= mask;
        if self.adj_list[ai].is_empty() {
            self.touched.push(a);
        }
        if self.adj_list[bi].is_empty() {
            self.touched.push(b);
        }
        self.adj_list[ai].push(b);
        self.adj_list[bi].push(a);
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a * self.words + b / 64] & (1u64 << (b % 64)) != 0
    }

    /// Lower bound on how many undecided edges must still be excluded, plus
    /// the branching edge (undecided, in the most active copies).
    ///
    /// A copy with one included and two undecided edges forbids keeping both
    /// of the latter: these pairs form a conflict graph, and a clique of size
    /// `s` in it loses at least `s - 1` edges. Cliques are packed greedily
    /// and disjoint all-undecided copies then add one each.
    fn bound_and_branch(&mut self) -> (usize, Option<usize>) {
        let mut triples = Vec::new();
        for c in 0..self.copies.len() {
            if self.copy_out[c] > 0 {
                continue;
            }
            let t = self.copies[c];
            for &f in &t {
                if self.status[f as usize] == UNDECIDED {
                    self.active[f as usize] += 1;
                }
            }
            match self.copy_in[c] {
                0 => triples.push(t),
                1 => {
                    let mut und = t.into_iter().filter(|&f| self.status[f as usize] == UNDECIDED);
                    let (a, b) = (und.next().expect("two undecided"), und.next().expect("two undecided"));
                    self.add_conflict(a, b);
                }
                _ => unreachable!("propagation leaves no active copy with two included edges"),
            }
        }

        let mut branch = None;
        let mut most = 0;
        for e in 0..self.active.len() {
            if self.active[e] > most {
                most = self.active[e];
                branch = Some(e);
            }
            self.active[e] = 0;
        }

        let mut verts = std::mem::take(&mut self.touched);
        verts.sort_unstable_by_key(|&v| (Reverse(self.adj_list[v as usize].len()), v));
        let mut lb = 0;
        let mut clique = Vec::new();
        for &v in &verts {
            if self.covered[v as usize] {
                continue;
            }
            clique.clear();
            clique.push(v as usize);
            for &u in &self.adj_list[v as usize] {
                let u = u as usize;
                if !self.covered[u] && clique.iter().all(|&w| self.adjacent(u, w)) {
                    clique.push(u);
                }
            }
            if clique.len() > 1 {
                lb += clique.len() - 1;
                for &w in &clique {
                    self.covered[w] = true;
                }
            }
        }
        for t in &triples {
            if t.iter().all(|&f| !self.covered[f as usize]) {
                lb += 1;
                for &f in t {
                    self.covered[f as usize] = true;
                }
            }
        }

        for &v in &verts {
            let v = v as usize;
            for &u in &self.adj_list[v] {
                self.adj[v * self.words + u as usize / 64] = 0;
            }
            self.adj_list[v].clear();
            self.covered[v] = false;
        }
        for t in &triples {
            for &f in t {
                self.covered[f as usize] = false;
            }
        }
        verts.clear();
        self.touched = verts;
        (lb, branch)
    }

    fn dfs(&mut self) {
        if self.meter.tick() {
            return;
        }
        let (lb, branch) = self.bound_and_branch();
        let Some(e) = branch else {
            // no active copy left: every undecided edge can be kept
            let value = self.n_in + self.n_undecided;
            if value > self.best {
                self.best = value;
                self.best_status = Some(self.status.clone());
            }
            return;
        };
        if self.n_in + self.n_undecided - lb <= self.best {
            return;
        }
        let mark = self.trail.len();
        self.include(e);
        self.dfs();
        self.undo_to(mark);
        if self.meter.hit {
            return;
        }
        self.set(e, OUT);
        self.dfs();
        self.undo_to(mark);
    }
}

/// Exact maximum `T_k`-free edge subset by branch and bound over edges.
///
/// All copies are enumerated first (more than [`MAX_EXACT_COPIES`] is an
/// error). The search branches on the undecided edge in the most active
/// copies, trying inclusion first; including the second edge of a copy
/// excludes its third. The repair heuristic supplies the incumbent, so on
/// budget exhaustion the result is at least as good as repair.
pub fn max_tfree_exact(h: &Hypergraph, budget: Budget) -> Result<SolveResult> {
    let copies = enumerate_copies_limited(h, MAX_EXACT_COPIES)?
        .ok_or(SolverError::TooManyCopies { limit: MAX_EXACT_COPIES })?;
    let incumbent = max_tfree_repair(h, TrialSeed::derive(0, 0), INCUMBENT_RESTARTS)?;
    let m = h.len();
    let mut edge_copies = vec![Vec::new(); m];
    for (c, t) in copies.iter().enumerate() {
        for &e in t {
            edge_copies[e as usize].push(c as u32);
        }
    }
    let words = m.div_ceil(64);
    let mut s = Search {
        copy_in: vec![0; copies.len()],
        copy_out: vec![0; copies.len()],
        copies,
        status: vec![UNDECIDED; m],
        n_in: 0,
        n_undecided: m,
        trail: Vec::with_capacity(m),
        best: incumbent.value,
        best_status: None,
        meter: Meter::new(budget),
        active: vec![0; m],
        words,
        adj: vec![0; m * words],
        adj_list: vec![Vec::new(); m],
        touched: Vec::new(),
        covered: vec![false; m],
        edge_copies,
    };
    for e in 0..m {
        if s.edge_copies[e].is_empty() {
            s.set(e, IN);
        }
    }
    s.dfs();
    let stats = s.meter.stats();
    Ok(match s.best_status {
        Some(status) => {
            let set = EdgeSet::filter(h, |i, _| status[i] != OUT);
            SolveResult { value: set.len(), witness: Witness::Edges(set), optimal: !stats.budget_hit, stats }
        }
        None => SolveResult { optimal: !stats.budget_hit, stats, ..incumbent },
    })
}
