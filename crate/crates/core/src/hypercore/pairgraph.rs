use serde::Serialize;

use super::{HypergraphError, Result, Vertex};

/// A simple graph on `0..n`: pairs stored as `(u, v)` with `u < v`,
/// ascending and without repeats.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairGraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    #[serde(skip)]
    adj: Vec<Vec<Vertex>>,
}

impl PairGraph {
    /// Rejects loops and out-of-range vertices; duplicates collapse.
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let pairs: Vec<_> = pairs.into_iter().collect();
        for &(u, v) in &pairs {
            if u == v {
                return Err(HypergraphError::SameVertex(u));
            }
            for w in [u, v] {
                if w as usize >= n {
                    return Err(HypergraphError::InvalidVertex { vertex: w, n });
                }
            }
        }
        Ok(Self::from_pairs_unchecked(n, pairs))
    }

    pub(crate) fn from_pairs_unchecked(n: usize, pairs: Vec<(Vertex, Vertex)>) -> Self {
        let mut edges: Vec<_> = pairs
            .into_iter()
            .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        PairGraph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        PairGraph { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn contains(&self, u: Vertex, v: Vertex) -> bool {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&key).is_ok()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v as usize].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// The subgraph induced by the vertices with `keep[v]`.
    pub fn induced(&self, keep: &[bool]) -> PairGraph {
        let pairs = self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| keep[u as usize] && keep[v as usize])
            .collect();
        Self::from_pairs_unchecked(self.n, pairs)
    }

    pub fn union(&self, other: &PairGraph) -> PairGraph {
        let mut pairs = self.edges.clone();
        pairs.extend_from_slice(&other.edges);
        Self::from_pairs_unchecked(self.n.max(other.n), pairs)
    }
}
