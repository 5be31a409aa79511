//! Experimental toolkit for the sparse Mantel problem on random 4-uniform
//! hypergraphs.
//!
//! * [`hypercore`]: k-uniform hypergraphs, vertex partitions, links,
//!   co-neighborhoods, crossing edges, shadow graphs and the text format.
//! * [`randgen`]: reproducible sampling of `G^k(n, p)` and per-trial seeds.
//! * [`motifs`]: the generalized triangle `T_k` and the `T̂` gadget.
//! * [`solvers`]: exact and heuristic maximum `T`-free subhypergraph and
//!   maximum partite cut, plus the bipartite half of a graph.
//! * [`proplab`]: concentration statistics, low co-degree pairs and the
//!   decomposition/audit quantities used in the structural argument.

pub mod hypercore;
pub mod motifs;
pub mod proplab;
pub mod randgen;
pub mod solvers;

pub use hypercore::{EdgeSet, Hypergraph, HypergraphError, PairGraph, Vertex, VertexPartition};
pub use randgen::TrialSeed;
