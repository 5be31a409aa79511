use serde::Serialize;

use super::{Hypergraph, HypergraphError, Result, Vertex};

/// A subset of the edges of a host hypergraph, stored as ascending edge
/// indices. The set remembers the size of its universe so that operations
/// between sets of different hosts are caught.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct EdgeSet {
    universe: usize,
    members: Vec<u32>,
}

impl EdgeSet {
    /// Validates indices against `host` and removes duplicates.
    pub fn new(host: &Hypergraph, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let len = host.len();
        let members = indices
            .into_iter()
            .map(|i| {
                if i < len {
                    Ok(i as u32)
                } else {
                    Err(HypergraphError::EdgeIndexOutOfRange { index: i, len })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_unsorted(len, members))
    }

    pub(crate) fn from_unsorted(universe: usize, mut members: Vec<u32>) -> Self {
        members.sort_unstable();
        members.dedup();
        EdgeSet { universe, members }
    }

    pub(crate) fn from_sorted(universe: usize, members: Vec<u32>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        EdgeSet { universe, members }
    }

    pub fn empty(host: &Hypergraph) -> Self {
        EdgeSet { universe: host.len(), members: Vec::new() }
    }

    pub fn full(host: &Hypergraph) -> Self {
        EdgeSet {
            universe: host.len(),
            members: (0..host.len() as u32).collect(),
        }
    }

    /// The edges of `host` accepted by `keep`.
    pub fn filter(host: &Hypergraph, mut keep: impl FnMut(usize, &[Vertex]) -> bool) -> Self {
        let members = host
            .edges()
            .enumerate()
            .filter(|(i, e)| keep(*i, e))
            .map(|(i, _)| i as u32)
            .collect();
        EdgeSet::from_sorted(host.len(), members)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.binary_search(&(index as u32)).is_ok()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.members.iter().map(|&i| i as usize)
    }

    pub fn indices(&self) -> &[u32] {
        &self.members
    }

    /// Membership as a dense boolean mask over the universe.
    pub fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.universe];
        for &i in &self.members {
            mask[i as usize] = true;
        }
        mask
    }

    fn check_same(&self, other: &EdgeSet) -> Result<()> {
        if self.universe == other.universe {
            Ok(())
        } else {
            Err(HypergraphError::Incompatible(format!(
                "edge sets over universes of size {} and {}",
                self.universe, other.universe
            )))
        }
    }

    pub fn union(&self, other: &EdgeSet) -> Result<EdgeSet> {
        self.check_same(other)?;
        let mut members = self.members.clone();
        members.extend_from_slice(&other.members);
        Ok(EdgeSet::from_unsorted(self.universe, members))
    }

    pub fn intersection(&self, other: &EdgeSet) -> Result<EdgeSet> {
        self.check_same(other)?;
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&i| other.contains(i as usize))
            .collect();
        Ok(EdgeSet::from_sorted(self.universe, members))
    }

    pub fn difference(&self, other: &EdgeSet) -> Result<EdgeSet> {
        self.check_same(other)?;
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&i| !other.contains(i as usize))
            .collect();
        Ok(EdgeSet::from_sorted(self.universe, members))
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.universe == other.universe && self.iter().all(|i| other.contains(i))
    }

    pub fn is_disjoint(&self, other: &EdgeSet) -> bool {
        self.iter().all(|i| !other.contains(i))
    }

    /// The member edges as vertex lists, in index order.
    pub fn edges<'a>(&'a self, host: &'a Hypergraph) -> impl Iterator<Item = &'a [Vertex]> + 'a {
        self.iter().map(move |i| host.edge(i))
    }
}
