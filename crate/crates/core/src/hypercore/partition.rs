use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{pack, Hypergraph, HypergraphError, Result, Vertex};

/// An assignment of the vertices `0..n` to `r` labelled classes.
///
/// Class order is meaningful: class 0 plays the role of `A₁`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PartitionRepr", into = "PartitionRepr")]
pub struct VertexPartition {
    r: usize,
    labels: Vec<u8>,
    sizes: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct PartitionRepr {
    r: usize,
    labels: Vec<u8>,
}

impl TryFrom<PartitionRepr> for VertexPartition {
    type Error = HypergraphError;

    fn try_from(repr: PartitionRepr) -> Result<Self> {
        VertexPartition::new(repr.r, repr.labels)
    }
}

impl From<VertexPartition> for PartitionRepr {
    fn from(p: VertexPartition) -> Self {
        PartitionRepr { r: p.r, labels: p.labels }
    }
}

impl VertexPartition {
    pub fn new(r: usize, labels: Vec<u8>) -> Result<Self> {
        if r == 0 || r > u8::MAX as usize {
            return Err(HypergraphError::InvalidPartition(format!("r = {r} classes")));
        }
        let mut sizes = vec![0; r];
        for (v, &l) in labels.iter().enumerate() {
            if l as usize >= r {
                return Err(HypergraphError::InvalidPartition(format!(
                    "vertex {v} has label {l} >= r = {r}"
                )));
            }
            sizes[l as usize] += 1;
        }
        Ok(VertexPartition { r, labels, sizes })
    }

    /// Builds from explicit classes; every vertex of `0..n` must appear once.
    pub fn from_classes<C: AsRef<[Vertex]>>(n: usize, classes: &[C]) -> Result<Self> {
        let mut labels = vec![u8::MAX; n];
        for (c, class) in classes.iter().enumerate() {
            for &v in class.as_ref() {
                let slot = labels.get_mut(v as usize).ok_or_else(|| {
                    HypergraphError::InvalidPartition(format!("vertex {v} out of range"))
                })?;
                if *slot != u8::MAX {
                    return Err(HypergraphError::InvalidPartition(format!(
                        "vertex {v} assigned twice"
                    )));
                }
                *slot = c as u8;
            }
        }
        if let Some(v) = labels.iter().position(|&l| l == u8::MAX) {
            return Err(HypergraphError::InvalidPartition(format!("vertex {v} unassigned")));
        }
        Self::new(classes.len(), labels)
    }

    /// Near-equal contiguous blocks; the first `n mod r` classes get the
    /// extra vertex.
    pub fn equal_parts(n: usize, r: usize) -> Self {
        let sizes = near_equal_sizes(n, r);
        let labels = sizes
            .iter()
            .enumerate()
            .flat_map(|(c, &s)| std::iter::repeat(c as u8).take(s))
            .collect();
        VertexPartition { r, labels, sizes }
    }

    /// Near-equal class sizes (as in [`equal_parts`](Self::equal_parts)) on
    /// a uniformly shuffled vertex order.
    pub fn random_equal_parts<R: Rng + ?Sized>(n: usize, r: usize, rng: &mut R) -> Self {
        let mut order: Vec<Vertex> = (0..n as Vertex).collect();
        order.shuffle(rng);
        let blocks = Self::equal_parts(n, r);
        let mut labels = vec![0u8; n];
        for (pos, &v) in order.iter().enumerate() {
            labels[v as usize] = blocks.labels[pos];
        }
        VertexPartition { r, labels, sizes: blocks.sizes }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    #[inline]
    pub fn class_of(&self, v: Vertex) -> usize {
        self.labels[v as usize] as usize
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    /// `|A_i|` for every class.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn class_members(&self, class: usize) -> Vec<Vertex> {
        (0..self.n() as Vertex)
            .filter(|&v| self.class_of(v) == class)
            .collect()
    }

    pub fn classes(&self) -> Vec<Vec<Vertex>> {
        let mut out = vec![Vec::new(); self.r];
        for (v, &l) in self.labels.iter().enumerate() {
            out[l as usize].push(v as Vertex);
        }
        out
    }

    /// Renames class `c` to `perm[c]`; `perm` must be a permutation of `0..r`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.r];
        if perm.len() != self.r
            || perm.iter().any(|&c| c >= self.r || std::mem::replace(&mut seen[c], true))
        {
            return Err(HypergraphError::InvalidPartition(format!(
                "{perm:?} is not a permutation of 0..{}",
                self.r
            )));
        }
        let labels = self.labels.iter().map(|&l| perm[l as usize] as u8).collect();
        Self::new(self.r, labels)
    }

    /// The same partition with classes renumbered in order of first
    /// occurrence (vertex 0 in class 0, the next new class is 1, ...).
    pub fn normalized(&self) -> Self {
        let mut map = vec![u8::MAX; self.r];
        let mut next = 0u8;
        let mut labels = Vec::with_capacity(self.n());
        for &l in &self.labels {
            if map[l as usize] == u8::MAX {
                map[l as usize] = next;
                next += 1;
            }
            labels.push(map[l as usize]);
        }
        Self::new(self.r, labels).expect("normalized labels stay below r")
    }
}

pub(crate) fn near_equal_sizes(n: usize, r: usize) -> Vec<usize> {
    (0..r).map(|c| n / r + usize::from(c < n % r)).collect()
}

/// Whether every class size lies in `[(1 - 1e-10) n/r, (1 + 1e-10) n/r]`.
///
/// With `r = 4` and `n < 4·10^10` the band contains at most one integer, so
/// a partition is balanced exactly when `4 | n` and every class has `n/4`
/// vertices.
pub fn is_balanced(partition: &VertexPartition, n: usize) -> bool {
    const BAND: f64 = 1e-10;
    let target = n as f64 / partition.r() as f64;
    let (lo, hi) = ((1.0 - BAND) * target, (1.0 + BAND) * target);
    partition
        .sizes()
        .iter()
        .all(|&s| (lo..=hi).contains(&(s as f64)))
}

/// The partition underlying `T_r(n)`: near-equal contiguous blocks.
pub fn turan_partition(n: usize, r: usize) -> Result<VertexPartition> {
    if r < 2 || n < r {
        return Err(HypergraphError::TuranShape { n, r });
    }
    Ok(VertexPartition::equal_parts(n, r))
}

/// The Turán hypergraph `T_r(n)`: all transversals of a near-equal
/// `r`-partition of `0..n`; `|T_r(n)|` is the product of the part sizes.
pub fn turan_hypergraph(n: usize, r: usize) -> Result<Hypergraph> {
    let partition = turan_partition(n, r)?;
    Hypergraph::empty(n, r)?;
    let classes = partition.classes();
    let mut keys = Vec::new();
    let mut pick = vec![0usize; r];
    let mut edge = vec![0 as Vertex; r];
    'outer: loop {
        for (c, &i) in pick.iter().enumerate() {
            edge[c] = classes[c][i];
        }
        keys.push(pack(&edge));
        for c in (0..r).rev() {
            pick[c] += 1;
            if pick[c] < classes[c].len() {
                continue 'outer;
            }
            pick[c] = 0;
        }
        break;
    }
    Ok(Hypergraph::from_keys(n, r, keys))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced_examples() {
        let p = VertexPartition::equal_parts(16, 4);
        assert_eq!(p.sizes(), &[4, 4, 4, 4]);
        assert!(is_balanced(&p, 16));
        let q = VertexPartition::from_classes(
            16,
            &[(0..5).collect::<Vec<_>>(), (5..9).collect(), (9..13).collect(), (13..16).collect()],
        )
        .unwrap();
        assert_eq!(q.sizes(), &[5, 4, 4, 3]);
        assert!(!is_balanced(&q, 16));
        // n = 14: no integer within the band around 3.5
        for labels in [vec![0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 3, 3, 3], vec![0; 14]] {
            let p = VertexPartition::new(4, labels).unwrap();
            assert!(!is_balanced(&p, 14));
        }
    }

    #[test]
    fn turan_examples() {
        assert_eq!(turan_hypergraph(4, 2).unwrap().len(), 4);
        let t47 = turan_hypergraph(7, 4).unwrap();
        assert_eq!(turan_partition(7, 4).unwrap().sizes(), &[2, 2, 2, 1]);
        assert_eq!(t47.len(), 8);
        assert_eq!(turan_hypergraph(5, 3).unwrap().len(), 4);
        assert_eq!(turan_hypergraph(12, 4).unwrap().len(), 81);
        assert!(turan_hypergraph(3, 4).is_err());
        assert!(turan_hypergraph(5, 1).is_err());
        let p = turan_partition(7, 4).unwrap();
        assert!(t47.edges().all(|e| Hypergraph::is_crossing(e, &p)));
    }

    #[test]
    fn partition_validation() {
        assert!(VertexPartition::new(2, vec![0, 1, 2]).is_err());
        assert!(VertexPartition::from_classes(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(VertexPartition::from_classes(3, &[vec![0, 1]]).is_err());
        let p = VertexPartition::new(3, vec![2, 2, 0, 1]).unwrap();
        assert_eq!(p.normalized().labels(), &[0, 0, 1, 2]);
        assert_eq!(p.relabeled(&[1, 2, 0]).unwrap().labels(), &[0, 0, 1, 2]);
        assert!(p.relabeled(&[0, 0, 1]).is_err());
    }

    #[test]
    fn random_equal_parts_keeps_sizes() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let p = VertexPartition::random_equal_parts(10, 4, &mut rng);
        assert_eq!(p.sizes(), &[3, 3, 2, 2]);
    }

    #[test]
    fn serde_round_trip_validates() {
        let p = VertexPartition::equal_parts(6, 3);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<VertexPartition>(&json).unwrap(), p);
        assert!(serde_json::from_str::<VertexPartition>(r#"{"r":2,"labels":[0,5]}"#).is_err());
    }
}
