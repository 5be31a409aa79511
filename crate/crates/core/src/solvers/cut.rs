//! Maximum partite cut: the largest number of edges of a `k`-uniform host
//! meeting every class of a `k`-partition.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Budget, Meter, Result, SolveResult, SolveStats, SolverError, Witness};
use crate::hypercore::{Hypergraph, VertexPartition};
use crate::randgen::TrialSeed;

const MAX_CLASSES: usize = 8;
/// Restarts used when an exact search wants a local-search incumbent.
const INCUMBENT_RESTARTS: usize = 8;

type Counts = [u8; MAX_CLASSES];

#[inline]
fn all_ones(cnt: &Counts, r: usize) -> bool {
    cnt[..r].iter().all(|&c| c == 1)
}

fn class_counts(h: &Hypergraph, labels: &[u8]) -> Vec<Counts> {
    h.edges()
        .map(|e| {
            let mut cnt = [0u8; MAX_CLASSES];
            for &v in e {
                cnt[labels[v as usize] as usize] += 1;
            }
            cnt
        })
        .collect()
}

#[inline]
fn distinct(cnt: &Counts, r: usize) -> i64 {
    cnt[..r].iter().filter(|&&c| c > 0).count() as i64
}

/// Moves single vertices to the class with the largest gain until no move
/// increases the number of crossing edges. Ties in that count are broken by
/// the total number of distinct classes per edge, which lets the climb cross
/// plateaus (a lone edge labelled `a, b, a, b` needs two moves). Returns the
/// final value and the number of moves made.
fn climb(h: &Hypergraph, r: usize, labels: &mut [u8]) -> (usize, u64) {
    let mut cnt = class_counts(h, labels);
    let inc = h.incidence();
    let mut moves = 0;
    loop {
        let mut improved = false;
        for v in 0..h.n() {
            let a = labels[v] as usize;
            let mut best = ((0i64, 0i64), a);
            for b in (0..r).filter(|&b| b != a) {
                let mut gain = (0i64, 0i64);
                for &e in &inc[v] {
                    let c = &mut cnt[e as usize];
                    let before = (all_ones(c, r) as i64, distinct(c, r));
                    c[a] -= 1;
                    c[b] += 1;
                    gain.0 += all_ones(c, r) as i64 - before.0;
                    gain.1 += distinct(c, r) - before.1;
                    c[b] -= 1;
                    c[a] += 1;
                }
                if gain > best.0 {
                    best = (gain, b);
                }
            }
            if best.0 > (0, 0) {
                let b = best.1;
                for &e in &inc[v] {
                    let c = &mut cnt[e as usize];
                    c[a] -= 1;
                    c[b] += 1;
                }
                labels[v] = b as u8;
                moves += 1;
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    (cnt.iter().filter(|c| all_ones(c, r)).count(), moves)
}

fn check_classes(h: &Hypergraph) -> Result<usize> {
    let r = h.k();
    if !(2..=MAX_CLASSES).contains(&r) {
        return Err(SolverError::Uniformity { expected: 4, got: r });
    }
    Ok(r)
}

/// Hill climbing over single-vertex moves with `k` classes, best over
/// `restarts` starts. Start 0 labels `v mod k`; later starts are uniform
/// random labelings drawn from `seed.child(restart)`. The result is
/// 1-move-optimal; `optimal` is set only when every edge is crossing.
pub fn max_cut_local(h: &Hypergraph, seed: TrialSeed, restarts: usize) -> Result<SolveResult> {
    let r = check_classes(h)?;
    let meter = Meter::new(Budget::unlimited());
    let mut nodes = 0;
    let mut best: Option<(usize, Vec<u8>)> = None;
    for t in 0..restarts.max(1) {
        let mut labels: Vec<u8> = if t == 0 {
            (0..h.n()).map(|v| (v % r) as u8).collect()
        } else {
            let mut rng = seed.child(t as u64).rng();
            (0..h.n()).map(|_| rng.gen_range(0..r) as u8).collect()
        };
        let (value, moves) = climb(h, r, &mut labels);
        nodes += moves + 1;
        if best.as_ref().map_or(true, |(b, _)| value > *b) {
            best = Some((value, labels));
        }
    }
    let (value, labels) = best.expect("at least one restart");
    Ok(SolveResult {
        value,
        witness: Witness::Partition(VertexPartition::new(r, labels)?),
        optimal: value == h.len(),
        stats: SolveStats { nodes, ..meter.stats() },
    })
}

struct ExactCut<'a> {
    h: &'a Hypergraph,
    r: usize,
    symmetry: bool,
    labels: Vec<u8>,
    cnt: Vec<Counts>,
    /// Per edge: number of repeated classes among its assigned vertices.
    repeats: Vec<u8>,
    dead: usize,
    /// Per edge: number of assigned vertices.
    filled: Vec<u8>,
    best: i64,
    found: Option<Vec<u8>>,
    meter: Meter,
    tally: Vec<[u32; MAX_CLASSES]>,
}

impl ExactCut<'_> {
    fn assign(&mut self, v: usize, c: u8) {
        self.labels[v] = c;
        for &e in &self.h.incidence()[v] {
            let e = e as usize;
            if self.cnt[e][c as usize] > 0 {
                self.repeats[e] += 1;
                if self.repeats[e] == 1 {
                    self.dead += 1;
                }
            }
            self.cnt[e][c as usize] += 1;
            self.filled[e] += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.labels[v] as usize;
        for &e in &self.h.incidence()[v] {
            let e = e as usize;
            self.cnt[e][c] -= 1;
            self.filled[e] -= 1;
            if self.cnt[e][c] > 0 {
                self.repeats[e] -= 1;
                if self.repeats[e] == 0 {
                    self.dead -= 1;
                }
            }
        }
    }

    fn bound(&self) -> i64 {
        (self.h.len() - self.dead) as i64
    }

    /// [`bound`](Self::bound) minus the edges that are lost whatever the
    /// remaining vertices do: a live edge whose only unassigned vertex is
    /// `u` is crossing only if `u` takes its one missing class, so of the
    /// edges waiting on `u` at most those missing its best class survive.
    fn sharper_bound(&mut self, next: usize) -> i64 {
        let k = self.h.k() as u8;
        let mut lost = 0;
        for u in next..self.h.n() {
            let tally = &mut self.tally[u];
            *tally = [0u32; MAX_CLASSES];
            let mut waiting = 0;
            for &e in &self.h.incidence()[u] {
                let e = e as usize;
                if self.filled[e] + 1 == k && self.repeats[e] == 0 {
                    let missing = self.cnt[e][..self.r].iter().position(|&c| c == 0).expect("one class free");
                    tally[missing] += 1;
                    waiting += 1;
                }
            }
            lost += waiting - tally.iter().map(|&t| t as i64).max().unwrap_or(0);
        }
        self.bound() - lost
    }

    /// Assigns vertices in index order and classes in ascending order, so the
    /// first optimum reached is the lexicographically least labeling.
    fn dfs(&mut self, v: usize, used: usize) {
        if self.meter.tick() {
            return;
        }
        if v == self.h.n() {
            // every live edge is fully assigned without repeats: crossing
            let value = self.bound();
            if value > self.best {
                self.best = value;
                self.found = Some(self.labels.clone());
            }
            return;
        }
        let top = if self.symmetry { (used + 1).min(self.r) } else { self.r };
        for c in 0..top {
            self.assign(v, c as u8);
            if self.bound() > self.best && self.sharper_bound(v + 1) > self.best {
                self.dfs(v + 1, used.max(c + 1));
            }
            self.unassign(v);
            if self.meter.hit {
                return;
            }
        }
    }
}

/// Runs the exact search looking for a labeling strictly better than
/// `floor`. Returns the labeling found (if any), whether the budget ran out,
/// and the statistics.
fn exact_search(
    h: &Hypergraph,
    r: usize,
    budget: Budget,
    symmetry: bool,
    floor: i64,
) -> (Option<(usize, Vec<u8>)>, SolveStats) {
    let mut s = ExactCut {
        h,
        r,
        symmetry,
        labels: vec![0; h.n()],
        cnt: vec![[0; MAX_CLASSES]; h.len()],
        repeats: vec![0; h.len()],
        dead: 0,
        filled: vec![0; h.len()],
        best: floor,
        tally: vec![[0u32; MAX_CLASSES]; h.n()],
        found: None,
        meter: Meter::new(budget),
    };
    s.dfs(0, 0);
    let found = s.found.take().map(|l| (s.best as usize, l));
    (found, s.meter.stats())
}

/// Exact maximum cut with `k` classes. Vertex 0 is fixed to class 0 and
/// classes are introduced in order of first occurrence; the bound is the
/// number of edges without two assigned vertices in a common class. A local
/// search supplies the starting bar, and the witness returned on completion
/// is the lexicographically least first-occurrence-normalized optimum.
pub fn max_cut_exact(h: &Hypergraph, budget: Budget) -> Result<SolveResult> {
    max_cut_exact_with(h, budget, true)
}

/// [`max_cut_exact`] with symmetry breaking optionally disabled (every
/// vertex tries every class).
pub fn max_cut_exact_with(h: &Hypergraph, budget: Budget, symmetry: bool) -> Result<SolveResult> {
    let r = check_classes(h)?;
    let local = max_cut_local(h, TrialSeed::derive(0, 0), INCUMBENT_RESTARTS)?;
    let (found, mut stats) = exact_search(h, r, budget, symmetry, local.value as i64 - 1);
    stats.nodes += local.stats.nodes;
    Ok(match found {
        Some((value, labels)) => SolveResult {
            value,
            witness: Witness::Partition(VertexPartition::new(r, labels)?),
            optimal: !stats.budget_hit,
            stats,
        },
        None => SolveResult { optimal: false, stats, ..local },
    })
}

fn check_four(h: &Hypergraph) -> Result<()> {
    if h.k() == 4 {
        Ok(())
    } else {
        Err(SolverError::Uniformity { expected: 4, got: h.k() })
    }
}

/// `q(H)` for a 4-uniform host, by exhaustive search.
pub fn max_cut4_exact(h: &Hypergraph, budget: Budget) -> Result<SolveResult> {
    check_four(h)?;
    max_cut_exact(h, budget)
}

pub fn max_cut4_local(h: &Hypergraph, seed: TrialSeed, restarts: usize) -> Result<SolveResult> {
    check_four(h)?;
    max_cut_local(h, seed, restarts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CutMethod {
    Exact,
    Local,
}

/// A 4-partition maximizing (exactly or locally) the crossing edges of `f`.
pub fn best_partition_for(
    f: &Hypergraph,
    method: CutMethod,
    seed: TrialSeed,
    restarts: usize,
    budget: Budget,
) -> Result<SolveResult> {
    match method {
        CutMethod::Exact => max_cut4_exact(f, budget),
        CutMethod::Local => max_cut4_local(f, seed, restarts),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "partition", rename_all = "snake_case")]
pub enum Partiteness {
    Yes(VertexPartition),
    No,
    Indeterminate,
}

impl Partiteness {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Partiteness::Yes(_) => Some(true),
            Partiteness::No => Some(false),
            Partiteness::Indeterminate => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Partiteness::Yes(_) => "yes",
            Partiteness::No => "no",
            Partiteness::Indeterminate => "indeterminate",
        }
    }
}

/// Whether some `k`-partition makes every edge crossing. A partition found
/// by local search settles `Yes` at once; otherwise the exact search looks
/// only for a full cut, and an exhausted budget gives `Indeterminate`.
pub fn is_k_partite(h: &Hypergraph, budget: Budget) -> Result<Partiteness> {
    let r = check_classes(h)?;
    let m = h.len();
    let local = max_cut_local(h, TrialSeed::derive(0, 0), INCUMBENT_RESTARTS)?;
    if local.value == m {
        return Ok(Partiteness::Yes(local.partition().expect("cut witness").normalized()));
    }
    let (found, stats) = exact_search(h, r, budget, true, m as i64 - 1);
    Ok(match found {
        Some((_, labels)) => Partiteness::Yes(VertexPartition::new(r, labels)?),
        None if stats.budget_hit => Partiteness::Indeterminate,
        None => Partiteness::No,
    })
}

pub fn is_4partite(h: &Hypergraph, budget: Budget) -> Result<Partiteness> {
    check_four(h)?;
    is_k_partite(h, budget)
}

/// Crossing-edge count of a labeling.
#[cfg(test)]
pub(crate) fn cut_value(h: &Hypergraph, labels: &[u8], r: usize) -> usize {
    h.edges()
        .filter(|e| {
            let mut seen = 0u32;
            e.iter().all(|&v| {
                let bit = 1 << labels[v as usize];
                let fresh = seen & bit == 0;
                seen |= bit;
                fresh
            }) && seen.count_ones() as usize == r
        })
        .count()
}
