use std::fmt;
use std::sync::OnceLock;

use rustc_hash::FxHashMap;

use super::{
    pack, EdgeSet, HypergraphError, PairGraph, Result, Vertex, VertexPartition, MAX_UNIFORMITY,
    MAX_VERTICES,
};

/// An `n`-vertex, `k`-uniform hypergraph with canonically ordered edges.
///
/// Edge `i` is `edge(i)`, an ascending slice of `k` vertices; edges are in
/// lexicographic order and pairwise distinct. The value is immutable; the
/// incidence, `(k-1)`-subset and pair indices are built lazily on first use
/// and are safe to share between threads.
pub struct Hypergraph {
    n: usize,
    k: usize,
    verts: Vec<Vertex>,
    lookup: FxHashMap<u128, u32>,
    incidence: OnceLock<Vec<Vec<u32>>>,
    cores: OnceLock<FxHashMap<u128, Vec<(Vertex, u32)>>>,
    pairs: OnceLock<FxHashMap<u64, Vec<u32>>>,
}

/// Result of a co-neighborhood query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoNeighborhood {
    /// `N(S)` for `|S| = k - 1`: the vertices completing `S` to an edge.
    Vertices(Vec<Vertex>),
    /// `N(S)` for `|S| = k - 2`: the pairs completing `S` to an edge.
    Pairs(Vec<(Vertex, Vertex)>),
}

impl CoNeighborhood {
    /// The co-degree.
    pub fn len(&self) -> usize {
        match self {
            CoNeighborhood::Vertices(v) => v.len(),
            CoNeighborhood::Pairs(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn check_shape(n: usize, k: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(HypergraphError::TooManyVertices(n));
    }
    if k == 0 || k > MAX_UNIFORMITY || k > n {
        return Err(HypergraphError::InvalidShape { n, k });
    }
    Ok(())
}

#[inline]
fn pair_key(a: Vertex, b: Vertex) -> u64 {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    ((a as u64) << 32) | b as u64
}

#[inline]
fn unpack_into(key: u128, k: usize, out: &mut Vec<Vertex>) {
    for i in (0..k).rev() {
        out.push(((key >> (16 * i)) & 0xFFFF) as Vertex);
    }
}

impl Hypergraph {
    /// Builds a hypergraph from arbitrary edge lists, canonicalizing vertex
    /// order inside each edge and removing duplicate edges.
    ///
    /// Errors name the index (in input order) of the first offending edge.
    pub fn new<I, E>(n: usize, k: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[Vertex]>,
    {
        check_shape(n, k)?;
        let mut keys = Vec::new();
        let mut buf = Vec::with_capacity(k);
        for (index, edge) in edges.into_iter().enumerate() {
            let edge = edge.as_ref();
            if edge.len() != k {
                return Err(HypergraphError::WrongArity {
                    index,
                    expected: k,
                    found: edge.len(),
                });
            }
            buf.clear();
            buf.extend_from_slice(edge);
            buf.sort_unstable();
            for w in buf.windows(2) {
                if w[0] == w[1] {
                    return Err(HypergraphError::RepeatedVertex {
                        index,
                        vertex: w[0],
                    });
                }
            }
            if let Some(&vertex) = buf.iter().find(|&&v| v as usize >= n) {
                return Err(HypergraphError::VertexOutOfRange { index, vertex, n });
            }
            keys.push(pack(&buf));
        }
        Ok(Self::from_keys(n, k, keys))
    }

    /// Builds from packed keys of ascending edges; sorts and dedups them.
    pub(crate) fn from_keys(n: usize, k: usize, mut keys: Vec<u128>) -> Self {
        keys.sort_unstable();
        keys.dedup();
        let mut verts = Vec::with_capacity(keys.len() * k);
        let mut lookup = FxHashMap::with_capacity_and_hasher(keys.len(), Default::default());
        for (i, &key) in keys.iter().enumerate() {
            unpack_into(key, k, &mut verts);
            lookup.insert(key, i as u32);
        }
        Hypergraph {
            n,
            k,
            verts,
            lookup,
            incidence: OnceLock::new(),
            cores: OnceLock::new(),
            pairs: OnceLock::new(),
        }
    }

    /// The hypergraph with no edges.
    pub fn empty(n: usize, k: usize) -> Result<Self> {
        check_shape(n, k)?;
        Ok(Self::from_keys(n, k, Vec::new()))
    }

    /// The complete k-uniform hypergraph `K^k_n`.
    pub fn complete(n: usize, k: usize) -> Result<Self> {
        check_shape(n, k)?;
        let mut keys = Vec::new();
        for_each_subset(n, k, |s| keys.push(pack(s)));
        Ok(Self::from_keys(n, k, keys))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `|H|`, the number of edges.
    pub fn len(&self) -> usize {
        self.lookup.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lookup.is_empty()
    }

    /// Edge `i` as an ascending vertex slice.
    pub fn edge(&self, i: usize) -> &[Vertex] {
        &self.verts[i * self.k..(i + 1) * self.k]
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[Vertex]> + '_ {
        self.verts.chunks_exact(self.k)
    }

    /// Index of the edge with exactly these vertices (any order).
    pub fn edge_index(&self, vertices: &[Vertex]) -> Option<usize> {
        if vertices.len() != self.k {
            return None;
        }
        let mut buf = [0 as Vertex; MAX_UNIFORMITY];
        let buf = &mut buf[..self.k];
        buf.copy_from_slice(vertices);
        buf.sort_unstable();
        self.index_of_sorted(buf)
    }

    /// Like [`edge_index`](Self::edge_index) for an already ascending slice.
    #[inline]
    pub fn index_of_sorted(&self, sorted: &[Vertex]) -> Option<usize> {
        if sorted.len() != self.k || sorted.iter().any(|&v| v as usize >= self.n) {
            return None;
        }
        self.lookup.get(&pack(sorted)).map(|&i| i as usize)
    }

    pub fn contains(&self, vertices: &[Vertex]) -> bool {
        self.edge_index(vertices).is_some()
    }

    pub(crate) fn key(&self, i: usize) -> u128 {
        pack(self.edge(i))
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if (v as usize) < self.n {
            Ok(())
        } else {
            Err(HypergraphError::InvalidVertex { vertex: v, n: self.n })
        }
    }

    pub(crate) fn check_partition(&self, partition: &VertexPartition) -> Result<()> {
        if partition.n() != self.n {
            return Err(HypergraphError::PartitionSize {
                partition: partition.n(),
                graph: self.n,
            });
        }
        if partition.r() != self.k {
            return Err(HypergraphError::CrossingArity {
                r: partition.r(),
                k: self.k,
            });
        }
        Ok(())
    }

    /// Vertex -> indices of the edges containing it (ascending).
    pub fn incidence(&self) -> &[Vec<u32>] {
        self.incidence.get_or_init(|| {
            let mut inc = vec![Vec::new(); self.n];
            for (i, e) in self.edges().enumerate() {
                for &v in e {
                    inc[v as usize].push(i as u32);
                }
            }
            inc
        })
    }

    fn core_index(&self) -> &FxHashMap<u128, Vec<(Vertex, u32)>> {
        self.cores.get_or_init(|| {
            let mut map: FxHashMap<u128, Vec<(Vertex, u32)>> = FxHashMap::default();
            let mut core = Vec::with_capacity(self.k);
            for (i, e) in self.edges().enumerate() {
                for skip in 0..self.k {
                    core.clear();
                    core.extend(e.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v));
                    map.entry(pack(&core)).or_default().push((e[skip], i as u32));
                }
            }
            map
        })
    }

    fn pair_index(&self) -> &FxHashMap<u64, Vec<u32>> {
        self.pairs.get_or_init(|| {
            let mut map: FxHashMap<u64, Vec<u32>> = FxHashMap::default();
            for (i, e) in self.edges().enumerate() {
                for a in 0..self.k {
                    for b in a + 1..self.k {
                        map.entry(pair_key(e[a], e[b])).or_default().push(i as u32);
                    }
                }
            }
            map
        })
    }

    /// The vertices `x` (with the index of edge `core + x`) completing an
    /// ascending `(k-1)`-set to an edge, in ascending edge-index order.
    pub fn completions(&self, sorted_core: &[Vertex]) -> &[(Vertex, u32)] {
        debug_assert_eq!(sorted_core.len() + 1, self.k);
        self.core_index()
            .get(&pack(sorted_core))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Indices of the edges containing both `a` and `b`.
    pub fn pair_edges(&self, a: Vertex, b: Vertex) -> &[u32] {
        if self.k < 2 {
            return &[];
        }
        self.pair_index()
            .get(&pair_key(a, b))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// `d(v)`.
    pub fn degree(&self, v: Vertex) -> usize {
        self.incidence().get(v as usize).map_or(0, Vec::len)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.incidence().iter().map(Vec::len).collect()
    }

    /// The link `L(v)`: the `(k-1)`-uniform hypergraph `{e - v : v ∈ e ∈ H}`.
    pub fn link(&self, v: Vertex) -> Result<Hypergraph> {
        self.check_vertex(v)?;
        self.link_filtered(v, |_| true)
    }

    fn link_filtered(&self, v: Vertex, keep: impl Fn(&[Vertex]) -> bool) -> Result<Hypergraph> {
        if self.k < 2 {
            return Err(HypergraphError::InvalidShape { n: self.n, k: self.k - 1 });
        }
        let mut rest = Vec::with_capacity(self.k);
        let keys = self.incidence()[v as usize]
            .iter()
            .map(|&i| self.edge(i as usize))
            .filter(|e| keep(e))
            .map(|e| {
                rest.clear();
                rest.extend(e.iter().copied().filter(|&x| x != v));
                pack(&rest)
            })
            .collect();
        Ok(Hypergraph::from_keys(self.n, self.k - 1, keys))
    }

    /// Whether `edge` has one vertex in every class (the partition must have
    /// `r = k` classes, which callers check once up front).
    #[inline]
    pub fn is_crossing(edge: &[Vertex], partition: &VertexPartition) -> bool {
        let mut mask = 0u32;
        for &v in edge {
            mask |= 1 << partition.class_of(v);
        }
        mask.count_ones() as usize == partition.r()
    }

    /// `H[Π]`, the edges meeting every class of `Π`.
    pub fn crossing_edges(&self, partition: &VertexPartition) -> Result<EdgeSet> {
        self.check_partition(partition)?;
        let members = self
            .edges()
            .enumerate()
            .filter(|(_, e)| Self::is_crossing(e, partition))
            .map(|(i, _)| i as u32)
            .collect();
        Ok(EdgeSet::from_sorted(self.len(), members))
    }

    /// `L_Π(v)`, the crossing link of `v`; its size is `d_Π(v)`.
    pub fn crossing_link(&self, v: Vertex, partition: &VertexPartition) -> Result<Hypergraph> {
        self.check_partition(partition)?;
        self.check_vertex(v)?;
        self.link_filtered(v, |e| Self::is_crossing(e, partition))
    }

    /// `d_Π(v)` without materializing the link.
    pub fn crossing_degree(&self, v: Vertex, partition: &VertexPartition) -> Result<usize> {
        self.check_partition(partition)?;
        self.check_vertex(v)?;
        Ok(self.incidence()[v as usize]
            .iter()
            .filter(|&&i| Self::is_crossing(self.edge(i as usize), partition))
            .count())
    }

    /// Common degree `d(u, v) = |L(u) ∩ L(v)|`, or the common crossing degree
    /// `d_Π(u, v) = |L_Π(u) ∩ L_Π(v)|` when a partition is supplied.
    pub fn common_degree(
        &self,
        u: Vertex,
        v: Vertex,
        partition: Option<&VertexPartition>,
    ) -> Result<usize> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(HypergraphError::SameVertex(u));
        }
        if let Some(p) = partition {
            self.check_partition(p)?;
        }
        let crossing = |e: &[Vertex]| partition.map_or(true, |p| Self::is_crossing(e, p));
        let mut swapped = Vec::with_capacity(self.k);
        let mut count = 0;
        for &i in &self.incidence()[u as usize] {
            let e = self.edge(i as usize);
            if e.contains(&v) || !crossing(e) {
                continue;
            }
            swapped.clear();
            swapped.extend(e.iter().map(|&x| if x == u { v } else { x }));
            swapped.sort_unstable();
            if self.index_of_sorted(&swapped).is_some() && crossing(&swapped) {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Co-neighborhood of a set of `k-1` vertices (a vertex set) or of `k-2`
    /// vertices (a set of pairs). Results are ascending.
    pub fn co_neighborhood(&self, set: &[Vertex]) -> Result<CoNeighborhood> {
        let mut s = set.to_vec();
        s.sort_unstable();
        for &v in &s {
            self.check_vertex(v)?;
        }
        if s.windows(2).any(|w| w[0] == w[1]) || (s.len() + 1 != self.k && s.len() + 2 != self.k) {
            return Err(HypergraphError::CoNeighborhoodArity {
                got: set.len(),
                k: self.k,
            });
        }
        if s.len() + 1 == self.k {
            let mut vs: Vec<Vertex> = self.completions(&s).iter().map(|&(x, _)| x).collect();
            vs.sort_unstable();
            return Ok(CoNeighborhood::Vertices(vs));
        }
        let mut pairs = Vec::new();
        let mut push_rest = |e: &[Vertex]| {
            let rest: Vec<Vertex> = e.iter().copied().filter(|x| !s.contains(x)).collect();
            pairs.push((rest[0], rest[1]));
        };
        match s.first() {
            None => self.edges().for_each(&mut push_rest),
            Some(&first) => {
                for &i in &self.incidence()[first as usize] {
                    let e = self.edge(i as usize);
                    if s.iter().all(|x| e.contains(x)) {
                        push_rest(e);
                    }
                }
            }
        }
        pairs.sort_unstable();
        Ok(CoNeighborhood::Pairs(pairs))
    }

    /// The shadow graph: `xy` is an edge iff some hyperedge contains both.
    pub fn shadow_graph(&self) -> PairGraph {
        let mut pairs = Vec::new();
        for e in self.edges() {
            for a in 0..e.len() {
                for b in a + 1..e.len() {
                    pairs.push((e[a], e[b]));
                }
            }
        }
        PairGraph::from_pairs_unchecked(self.n, pairs)
    }

    /// `H[A, B] = H ∩ {a ∪ b : a ∈ A, b ∈ B}`. Non-disjoint pairs `(a, b)` are
    /// skipped. All members of `A` (resp. `B`) must have one common size and
    /// the two sizes must add up to `k`.
    pub fn restrict_bracket<A, B>(&self, a_sets: &[A], b_sets: &[B]) -> Result<EdgeSet>
    where
        A: AsRef<[Vertex]>,
        B: AsRef<[Vertex]>,
    {
        let arity = |sets: &[&[Vertex]]| -> Result<Option<usize>> {
            let Some(first) = sets.first() else {
                return Ok(None);
            };
            match sets.iter().find(|s| s.len() != first.len()) {
                Some(bad) => Err(HypergraphError::BracketArity {
                    a: first.len(),
                    b: bad.len(),
                    k: self.k,
                }),
                None => Ok(Some(first.len())),
            }
        };
        let a_sets: Vec<&[Vertex]> = a_sets.iter().map(AsRef::as_ref).collect();
        let b_sets: Vec<&[Vertex]> = b_sets.iter().map(AsRef::as_ref).collect();
        match (arity(&a_sets)?, arity(&b_sets)?) {
            (Some(a), Some(b)) if a + b != self.k => {
                return Err(HypergraphError::BracketArity { a, b, k: self.k })
            }
            (Some(a), None) | (None, Some(a)) if a > self.k => {
                return Err(HypergraphError::BracketArity { a, b: 0, k: self.k })
            }
            _ => {}
        }
        let mut members = Vec::new();
        let mut buf = Vec::with_capacity(self.k);
        for a in &a_sets {
            for b in &b_sets {
                if a.iter().any(|x| b.contains(x)) {
                    continue;
                }
                buf.clear();
                buf.extend_from_slice(a);
                buf.extend_from_slice(b);
                buf.sort_unstable();
                if let Some(i) = self.index_of_sorted(&buf) {
                    members.push(i as u32);
                }
            }
        }
        Ok(EdgeSet::from_unsorted(self.len(), members))
    }

    /// The hypergraph formed by a subset of this hypergraph's edges.
    pub fn sub_hypergraph(&self, set: &EdgeSet) -> Hypergraph {
        let keys = set.iter().map(|i| self.key(i)).collect();
        Hypergraph::from_keys(self.n, self.k, keys)
    }

    /// The edges of `sub` as an [`EdgeSet`] of `self`; fails unless `sub` is
    /// a subhypergraph on the same vertex set.
    pub fn edge_set_of(&self, sub: &Hypergraph) -> Result<EdgeSet> {
        if sub.n != self.n || sub.k != self.k {
            return Err(HypergraphError::Incompatible(format!(
                "({}, {}) vs ({}, {})",
                sub.n, sub.k, self.n, self.k
            )));
        }
        let members = sub
            .edges()
            .map(|e| {
                self.index_of_sorted(e)
                    .map(|i| i as u32)
                    .ok_or_else(|| HypergraphError::NotInHost(e.to_vec()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(EdgeSet::from_unsorted(self.len(), members))
    }

    pub fn is_subhypergraph_of(&self, host: &Hypergraph) -> bool {
        host.edge_set_of(self).is_ok()
    }
}

/// Calls `f` on every ascending `k`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[Vertex])) {
    if k > n {
        return;
    }
    let mut s: Vec<Vertex> = (0..k as Vertex).collect();
    loop {
        f(&s);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if (s[i] as usize) < n - k + i {
                break;
            }
            if i == 0 {
                return;
            }
        }
        s[i] += 1;
        for j in i + 1..k {
            s[j] = s[j - 1] + 1;
        }
    }
}

impl Clone for Hypergraph {
    fn clone(&self) -> Self {
        Hypergraph {
            n: self.n,
            k: self.k,
            verts: self.verts.clone(),
            lookup: self.lookup.clone(),
            incidence: OnceLock::new(),
            cores: OnceLock::new(),
            pairs: OnceLock::new(),
        }
    }
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k && self.verts == other.verts
    }
}

impl Eq for Hypergraph {}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypergraph")
            .field("n", &self.n)
            .field("k", &self.k)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t4() -> Hypergraph {
        Hypergraph::new(7, 4, [[0, 1, 2, 3], [0, 1, 2, 4], [3, 4, 5, 6]]).unwrap()
    }

    #[test]
    fn build_dedups_and_canonicalizes() {
        let h = Hypergraph::new(5, 3, [[0, 1, 2], [2, 1, 0]]).unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h.edge(0), &[0, 1, 2]);
        assert_eq!(t4().len(), 3);
    }

    #[test]
    fn build_reports_offending_edge() {
        assert_eq!(
            Hypergraph::new(4, 4, [[0, 1, 2, 5]]),
            Err(HypergraphError::VertexOutOfRange { index: 0, vertex: 5, n: 4 })
        );
        assert_eq!(
            Hypergraph::new(6, 3, [vec![0, 1, 2], vec![3, 3, 4]]),
            Err(HypergraphError::RepeatedVertex { index: 1, vertex: 3 })
        );
        assert_eq!(
            Hypergraph::new(6, 3, [vec![0, 1, 2], vec![0, 1, 2, 3]]),
            Err(HypergraphError::WrongArity { index: 1, expected: 3, found: 4 })
        );
        assert!(Hypergraph::new(3, 4, Vec::<Vec<Vertex>>::new()).is_err());
    }

    #[test]
    fn edges_are_lexicographic() {
        let h = Hypergraph::new(6, 3, [[3, 4, 5], [0, 4, 5], [0, 1, 5], [1, 2, 3]]).unwrap();
        let edges: Vec<_> = h.edges().map(<[u32]>::to_vec).collect();
        assert_eq!(edges, vec![vec![0, 1, 5], vec![0, 4, 5], vec![1, 2, 3], vec![3, 4, 5]]);
    }

    #[test]
    fn complete_hypergraph_sizes() {
        assert_eq!(Hypergraph::complete(7, 4).unwrap().len(), 35);
        assert_eq!(Hypergraph::complete(5, 5).unwrap().len(), 1);
        assert_eq!(Hypergraph::complete(9, 2).unwrap().len(), 36);
    }

    #[test]
    fn link_examples() {
        let k7 = Hypergraph::complete(7, 4).unwrap();
        assert_eq!(k7.link(0).unwrap().len(), 20);
        let l = t4().link(3).unwrap();
        assert_eq!(l.k(), 3);
        assert_eq!(l.edges().collect::<Vec<_>>(), vec![&[0, 1, 2][..], &[4, 5, 6][..]]);
        assert_eq!(t4().degree(3), 2);
        let empty = Hypergraph::empty(5, 4).unwrap();
        assert_eq!(empty.link(2).unwrap().len(), 0);
        assert!(t4().link(7).is_err());
    }

    #[test]
    fn crossing_examples() {
        let k8 = Hypergraph::complete(8, 4).unwrap();
        let p = VertexPartition::from_classes(8, &[vec![0, 1], vec![2, 3], vec![4, 5], vec![6, 7]])
            .unwrap();
        assert_eq!(k8.crossing_edges(&p).unwrap().len(), 16);

        let t = t4();
        let p = VertexPartition::from_classes(7, &[vec![0, 4], vec![1, 5], vec![2, 6], vec![3]])
            .unwrap();
        let cross = t.crossing_edges(&p).unwrap();
        let edges: Vec<_> = cross.iter().map(|i| t.edge(i).to_vec()).collect();
        assert_eq!(edges, vec![vec![0, 1, 2, 3], vec![3, 4, 5, 6]]);
        assert_eq!(t.crossing_link(3, &p).unwrap().len(), 2);
        assert_eq!(t.crossing_degree(3, &p).unwrap(), 2);

        let with_empty = VertexPartition::new(4, vec![0, 0, 1, 1, 2, 2, 2]).unwrap();
        assert_eq!(t.crossing_edges(&with_empty).unwrap().len(), 0);

        let three = VertexPartition::new(3, vec![0, 1, 2, 0, 1, 2, 0]).unwrap();
        assert!(matches!(
            t.crossing_edges(&three),
            Err(HypergraphError::CrossingArity { r: 3, k: 4 })
        ));
    }

    #[test]
    fn crossing_degree_on_complete_balanced() {
        let n = 12;
        let g = Hypergraph::complete(n, 4).unwrap();
        let p = VertexPartition::equal_parts(n, 4);
        for v in 0..n as Vertex {
            assert_eq!(g.crossing_degree(v, &p).unwrap(), 27);
        }
        // every edge through 0 also contains vertex 1 => no crossing edge
        let h = Hypergraph::new(8, 4, [[0, 1, 2, 4], [0, 1, 5, 6]]).unwrap();
        let p = VertexPartition::from_classes(8, &[vec![0, 1], vec![2, 3], vec![4, 5], vec![6, 7]])
            .unwrap();
        assert_eq!(h.crossing_degree(0, &p).unwrap(), 0);
    }

    #[test]
    fn common_degree_examples() {
        let n = 9;
        let g = Hypergraph::complete(n, 4).unwrap();
        assert_eq!(g.common_degree(0, 5, None).unwrap(), 35); // C(7,3)
        let g16 = Hypergraph::complete(16, 4).unwrap();
        let p = VertexPartition::equal_parts(16, 4);
        assert_eq!(g16.common_degree(0, 1, Some(&p)).unwrap(), 64);
        assert_eq!(t4().common_degree(0, 4, None).unwrap(), 0);
        assert_eq!(t4().common_degree(3, 4, None).unwrap(), 1); // {0,1,2}
        assert_eq!(t4().common_degree(2, 2, None), Err(HypergraphError::SameVertex(2)));
    }

    #[test]
    fn co_neighborhood_examples() {
        let g = Hypergraph::complete(10, 4).unwrap();
        assert_eq!(g.co_neighborhood(&[0, 1, 2]).unwrap().len(), 7);
        assert_eq!(g.co_neighborhood(&[3, 8]).unwrap().len(), 28);
        assert_eq!(
            t4().co_neighborhood(&[6, 4, 5]).unwrap(),
            CoNeighborhood::Vertices(vec![3])
        );
        assert_eq!(
            t4().co_neighborhood(&[0, 1]).unwrap(),
            CoNeighborhood::Pairs(vec![(2, 3), (2, 4)])
        );
        assert!(t4().co_neighborhood(&[0]).is_err());
        assert!(t4().co_neighborhood(&[0, 0, 1]).is_err());
        let tri = Hypergraph::new(3, 2, [[0, 1], [1, 2]]).unwrap();
        assert_eq!(tri.co_neighborhood(&[]).unwrap().len(), 2);
    }

    #[test]
    fn shadow_graph_examples() {
        let one = Hypergraph::new(4, 4, [[0, 1, 2, 3]]).unwrap();
        assert_eq!(one.shadow_graph().len(), 6);
        let two = Hypergraph::new(7, 4, [[0, 1, 2, 3], [3, 4, 5, 6]]).unwrap();
        assert_eq!(two.shadow_graph().len(), 12);
        assert_eq!(Hypergraph::empty(5, 4).unwrap().shadow_graph().len(), 0);
    }

    #[test]
    fn restrict_bracket_examples() {
        let t = t4();
        let got = t.restrict_bracket(&[vec![3]], &[vec![4, 5, 6]]).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(t.edge(got.iter().next().unwrap()), &[3, 4, 5, 6]);

        let link: Vec<Vec<Vertex>> = t.link(0).unwrap().edges().map(<[u32]>::to_vec).collect();
        let through0 = t.restrict_bracket(&[vec![0]], &link).unwrap();
        assert_eq!(through0.len(), 2);

        let none: Vec<Vec<Vertex>> = Vec::new();
        assert!(t.restrict_bracket(&[vec![0]], &none).unwrap().is_empty());
        assert!(matches!(
            t.restrict_bracket(&[vec![0]], &[vec![1, 2]]),
            Err(HypergraphError::BracketArity { .. })
        ));
        // non-disjoint unions are skipped silently
        assert!(t.restrict_bracket(&[vec![0]], &[vec![0, 1, 2]]).unwrap().is_empty());
    }

    #[test]
    fn subset_enumeration_is_lexicographic() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, |s| seen.push(s.to_vec()));
        assert_eq!(
            seen,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        let mut count = 0;
        for_each_subset(3, 0, |_| count += 1);
        assert_eq!(count, 1);
    }

    #[test]
    fn sub_hypergraph_round_trip() {
        let g = Hypergraph::complete(6, 3).unwrap();
        let f = Hypergraph::new(6, 3, [[0, 1, 2], [3, 4, 5]]).unwrap();
        let set = g.edge_set_of(&f).unwrap();
        assert_eq!(g.sub_hypergraph(&set), f);
        assert!(f.is_subhypergraph_of(&g));
        assert!(!g.is_subhypergraph_of(&f));
    }
}
