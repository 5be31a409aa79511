//! Canonical data model: k-uniform hypergraphs, edge subsets, vertex
//! partitions and simple graphs, with the link / co-degree / crossing
//! queries built on top of them.
//!
//! Vertices are dense 0-based integers. Every edge is stored as an ascending
//! vertex list and the edge list itself is kept in lexicographic order, so
//! two hypergraphs with the same edge *sets* are identical values.

mod edgeset;
mod hypergraph;
mod pairgraph;
mod partition;
mod textfmt;

pub use edgeset::EdgeSet;
pub use hypergraph::{CoNeighborhood, Hypergraph};
pub use pairgraph::PairGraph;
pub use partition::{is_balanced, turan_hypergraph, turan_partition, VertexPartition};
pub use textfmt::{parse_text, to_text};

use thiserror::Error;

/// A vertex label, `0..n`.
pub type Vertex = u32;

/// Largest supported uniformity: edges are packed 16 bits per vertex into a
/// `u128` lookup key.
pub const MAX_UNIFORMITY: usize = 8;
/// Largest supported vertex count (16-bit vertex ids in lookup keys).
pub const MAX_VERTICES: usize = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("uniformity {k} is not supported for n = {n} (need 1 <= k <= min(n, {max}))", max = MAX_UNIFORMITY)]
    InvalidShape { n: usize, k: usize },
    #[error("vertex count {0} exceeds the supported maximum {max}", max = MAX_VERTICES)]
    TooManyVertices(usize),
    #[error("edge #{index} has {found} vertices, expected {expected}")]
    WrongArity { index: usize, expected: usize, found: usize },
    #[error("edge #{index} repeats vertex {vertex}")]
    RepeatedVertex { index: usize, vertex: Vertex },
    #[error("edge #{index} contains vertex {vertex}, out of range for n = {n}")]
    VertexOutOfRange { index: usize, vertex: Vertex, n: usize },
    #[error("vertex {vertex} out of range for n = {n}")]
    InvalidVertex { vertex: Vertex, n: usize },
    #[error("the two vertices must differ (got {0} twice)")]
    SameVertex(Vertex),
    #[error("crossing edges need a partition with r = k classes (r = {r}, k = {k})")]
    CrossingArity { r: usize, k: usize },
    #[error("partition covers {partition} vertices but the hypergraph has {graph}")]
    PartitionSize { partition: usize, graph: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("co-neighborhood query needs k-1 or k-2 distinct vertices (got {got}, k = {k})")]
    CoNeighborhoodArity { got: usize, k: usize },
    #[error("bracket arities {a} + {b} do not add up to k = {k}")]
    BracketArity { a: usize, b: usize, k: usize },
    #[error("Turán hypergraph needs n >= r >= 2 (n = {n}, r = {r})")]
    TuranShape { n: usize, r: usize },
    #[error("edge index {index} out of range for a hypergraph with {len} edges")]
    EdgeIndexOutOfRange { index: usize, len: usize },
    #[error("hypergraphs are not comparable: {0}")]
    Incompatible(String),
    #[error("edge {0:?} is not an edge of the host hypergraph")]
    NotInHost(Vec<Vertex>),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = HypergraphError> = std::result::Result<T, E>;

/// `C(n, k)` as `u128`, or `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// Packs an ascending vertex list into a lookup key.
#[inline]
pub(crate) fn pack(vs: &[Vertex]) -> u128 {
    vs.iter().fold(0u128, |acc, &v| (acc << 16) | v as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(7, 4), Some(35));
        assert_eq!(binomial(40, 4), Some(91_390));
        assert_eq!(binomial(3, 5), Some(0));
        assert_eq!(binomial(64, 0), Some(1));
    }

    #[test]
    fn pack_is_injective_on_fixed_length() {
        assert_ne!(pack(&[0, 1, 2]), pack(&[0, 1, 3]));
        assert_ne!(pack(&[1, 0]), pack(&[0, 1]));
    }
}
