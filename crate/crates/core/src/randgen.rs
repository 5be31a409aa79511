//! Reproducible sampling of the binomial random hypergraph `G^k(n, p)`.
//!
//! # Seeds
//!
//! A trial's seed is derived from a master seed and the trial index with the
//! SplitMix64 finalizer:
//!
//! ```text
//! derived = mix(master + (index + 1) * 0x9E3779B97F4A7C15)      (mod 2^64)
//! mix(z):  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//!          z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//!          z ^ (z >> 31)
//! ```
//!
//! For a fixed master, `index -> derived` is a bijection on 64-bit integers
//! (the increment is odd and `mix` is invertible), so distinct indices never
//! collide. The random stream of a trial is `ChaCha8Rng::seed_from_u64(derived)`.
//!
//! # Sampling order
//!
//! The `C(n, k)` candidate edges are visited in colexicographic order (rank
//! of `{c_1 < ... < c_k}` is `Σ C(c_i, i)`). The default [`Generator::Skip`]
//! draws geometric gaps between kept ranks,
//! `gap = floor(ln(1 - U) / ln(1 - p))` with `U = rng.gen::<f64>()`, and is
//! the normative generator. [`Generator::Bernoulli`] flips one coin
//! `rng.gen::<f64>() < p` per rank; it has the same distribution but a
//! different output for the same seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypercore::{pack, Hypergraph, HypergraphError, Vertex};

pub const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
pub fn splitmix64_mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of one trial: the master seed, the trial index and the derived seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TrialSeed {
    pub master: u64,
    pub index: u64,
    pub derived: u64,
}

impl TrialSeed {
    pub fn derive(master: u64, index: u64) -> Self {
        let derived = splitmix64_mix(master.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)));
        TrialSeed { master, index, derived }
    }

    /// An independent sub-stream of this trial (solver restarts, partition
    /// draws, ...), derived with `self.derived` as master.
    pub fn child(&self, stream: u64) -> Self {
        Self::derive(self.derived, stream)
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.derived)
    }
}

/// `derive_seed(master, index)`; see the module docs for the mixing function.
pub fn derive_seed(master: u64, index: u64) -> TrialSeed {
    TrialSeed::derive(master, index)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Generator {
    /// Geometric skips over the colex order (default, normative).
    #[default]
    Skip,
    /// One Bernoulli trial per candidate edge.
    Bernoulli,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SampleError {
    #[error("edge probability {0} is outside [0, 1]")]
    Probability(f64),
    #[error("C({n}, {k}) candidate edges do not fit in 64 bits")]
    TooLarge { n: usize, k: usize },
    #[error(transparent)]
    Shape(#[from] HypergraphError),
}

/// Binomial coefficients `C(c, i)` for `c <= n`, `i <= k`, for colex
/// ranking of `k`-subsets of `0..n`.
#[derive(Debug, Clone)]
pub struct Colex {
    n: usize,
    k: usize,
    table: Vec<u64>,
}

impl Colex {
    pub fn new(n: usize, k: usize) -> Result<Self, SampleError> {
        let mut table = vec![0u64; (n + 1) * (k + 1)];
        for c in 0..=n {
            for i in 0..=k.min(c) {
                table[c * (k + 1) + i] = if i == 0 || i == c {
                    1
                } else {
                    let a = table[(c - 1) * (k + 1) + i - 1];
                    let b = table[(c - 1) * (k + 1) + i];
                    a.checked_add(b).ok_or(SampleError::TooLarge { n, k })?
                };
            }
        }
        Ok(Colex { n, k, table })
    }

    #[inline]
    fn binom(&self, c: usize, i: usize) -> u64 {
        if i > c {
            0
        } else {
            self.table[c * (self.k + 1) + i]
        }
    }

    /// `C(n, k)`.
    pub fn total(&self) -> u64 {
        self.binom(self.n, self.k)
    }

    pub fn rank(&self, subset: &[Vertex]) -> u64 {
        subset
            .iter()
            .enumerate()
            .map(|(i, &c)| self.binom(c as usize, i + 1))
            .sum()
    }

    /// Writes the ascending subset of colex rank `rank` into `out`.
    pub fn unrank(&self, mut rank: u64, out: &mut [Vertex]) {
        debug_assert!(rank < self.total() && out.len() == self.k);
        let mut upper = self.n;
        for i in (1..=self.k).rev() {
            // largest c in [i-1, upper) with C(c, i) <= rank
            let (mut lo, mut hi) = (i - 1, upper - 1);
            while lo < hi {
                let mid = (lo + hi + 1) / 2;
                if self.binom(mid, i) <= rank {
                    lo = mid;
                } else {
                    hi = mid - 1;
                }
            }
            out[i - 1] = lo as Vertex;
            rank -= self.binom(lo, i);
            upper = lo;
        }
    }
}

/// Samples `G^k(n, p)` with the default skip generator.
pub fn sample_gknp(n: usize, k: usize, p: f64, seed: TrialSeed) -> Result<Hypergraph, SampleError> {
    sample_with(Generator::Skip, n, k, p, seed)
}

pub fn sample_with(
    generator: Generator,
    n: usize,
    k: usize,
    p: f64,
    seed: TrialSeed,
) -> Result<Hypergraph, SampleError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(SampleError::Probability(p));
    }
    Hypergraph::empty(n, k)?;
    let colex = Colex::new(n, k)?;
    let total = colex.total();
    let mut rng = seed.rng();
    let mut keys = Vec::new();
    let mut subset = vec![0 as Vertex; k];
    let mut keep = |rank: u64, keys: &mut Vec<u128>| {
        colex.unrank(rank, &mut subset);
        keys.push(pack(&subset));
    };
    match generator {
        _ if p == 0.0 => {}
        _ if p == 1.0 => (0..total).for_each(|r| keep(r, &mut keys)),
        Generator::Skip => {
            keys.reserve((total as f64 * p * 1.05) as usize);
            let log_q = (-p).ln_1p();
            let mut next = 0u64;
            loop {
                let u = 1.0 - rng.gen::<f64>();
                let gap = (u.ln() / log_q).floor() as u64;
                next = match next.checked_add(gap) {
                    Some(r) if r < total => r,
                    _ => break,
                };
                keep(next, &mut keys);
                next += 1;
            }
        }
        Generator::Bernoulli => {
            for r in 0..total {
                if rng.gen::<f64>() < p {
                    keep(r, &mut keys);
                }
            }
        }
    }
    Ok(Hypergraph::from_keys(n, k, keys))
}

/// `p = c · ln(n) / n`, clamped to `[0, 1]`.
pub fn log_scaled_probability(c: f64, n: usize) -> f64 {
    (c * (n as f64).ln() / n as f64).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::hypercore::{binomial, to_text};

    #[test]
    fn seed_derivation_is_deterministic_and_distinct() {
        assert_eq!(derive_seed(42, 7), derive_seed(42, 7));
        assert_ne!(derive_seed(42, 0).derived, derive_seed(42, 1).derived);
        let seen: HashSet<u64> = (0..1_000_000).map(|i| derive_seed(0xDEAD_BEEF, i).derived).collect();
        assert_eq!(seen.len(), 1_000_000);
    }

    #[test]
    fn splitmix_reference_value() {
        // First output of the reference SplitMix64 stream seeded with 0.
        assert_eq!(splitmix64_mix(GOLDEN_GAMMA), 0xE220_A839_7B1D_CDAF);
        assert_eq!(derive_seed(0, 0).derived, 0xE220_A839_7B1D_CDAF);
    }

    #[test]
    fn colex_rank_unrank_round_trip() {
        let colex = Colex::new(9, 4).unwrap();
        assert_eq!(colex.total(), 126);
        let mut out = [0; 4];
        let mut prev: Option<Vec<Vertex>> = None;
        for r in 0..colex.total() {
            colex.unrank(r, &mut out);
            assert_eq!(colex.rank(&out), r);
            assert!(out.windows(2).all(|w| w[0] < w[1]));
            if let Some(p) = prev {
                // colex: compare from the largest element down
                let a: Vec<_> = p.iter().rev().collect();
                let b: Vec<_> = out.iter().rev().collect();
                assert!(a < b);
            }
            prev = Some(out.to_vec());
        }
        assert!(matches!(Colex::new(300, 40), Err(SampleError::TooLarge { .. })));
    }

    #[test]
    fn degenerate_probabilities() {
        let seed = derive_seed(1, 0);
        assert!(sample_gknp(10, 4, 0.0, seed).unwrap().is_empty());
        assert_eq!(sample_gknp(10, 4, 1.0, seed).unwrap().len(), 210);
        assert_eq!(
            sample_with(Generator::Bernoulli, 8, 3, 1.0, seed).unwrap(),
            Hypergraph::complete(8, 3).unwrap()
        );
        assert_eq!(sample_gknp(10, 4, 1.5, seed), Err(SampleError::Probability(1.5)));
        assert!(sample_gknp(10, 4, -0.1, seed).is_err());
    }

    #[test]
    fn sample_size_within_four_sigma() {
        let mean = 0.1 * binomial(40, 4).unwrap() as f64;
        let sigma = (mean * 0.9).sqrt();
        assert_eq!(mean, 9139.0);
        assert!((sigma - 90.69).abs() < 0.01);
        let m = sample_gknp(40, 4, 0.1, derive_seed(2024, 0)).unwrap().len() as f64;
        assert!((8776.0..=9502.0).contains(&m), "{m}");
    }

    #[test]
    fn identical_inputs_identical_outputs() {
        let a = sample_gknp(20, 4, 0.2, derive_seed(5, 3)).unwrap();
        let b = sample_gknp(20, 4, 0.2, derive_seed(5, 3)).unwrap();
        assert_eq!(to_text(&a), to_text(&b));
        let c = sample_gknp(20, 4, 0.2, derive_seed(5, 4)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn empirical_mean_matches_binomial_mean() {
        let trials = 1000;
        let expect = 0.1 * 91_390.0;
        let sigma = (expect * 0.9_f64).sqrt();
        let mean = (0..trials)
            .map(|i| sample_gknp(40, 4, 0.1, derive_seed(77, i)).unwrap().len() as f64)
            .sum::<f64>()
            / trials as f64;
        assert!((mean - expect).abs() <= 0.01 * expect);
        assert!((mean - expect).abs() <= 3.0 * sigma / (trials as f64).sqrt(), "{mean}");
    }

    #[test]
    fn skip_and_bernoulli_generators_agree_in_distribution() {
        let trials = 400u64;
        let (n, k, p) = (16, 4, 0.05);
        let expect = p * binomial(16, 4).unwrap() as f64;
        let sigma = (expect * (1.0 - p)).sqrt();
        for g in [Generator::Skip, Generator::Bernoulli] {
            let mean = (0..trials)
                .map(|i| sample_with(g, n, k, p, derive_seed(9, i)).unwrap().len() as f64)
                .sum::<f64>()
                / trials as f64;
            assert!((mean - expect).abs() <= 4.0 * sigma / (trials as f64).sqrt(), "{g:?} {mean}");
        }
        // Per-rank inclusion frequency is flat for the skip sampler.
        let colex = Colex::new(n, k).unwrap();
        let mut hits = vec![0u32; colex.total() as usize];
        for i in 0..2000 {
            let h = sample_gknp(n, k, 0.3, derive_seed(11, i)).unwrap();
            for e in h.edges() {
                hits[colex.rank(e) as usize] += 1;
            }
        }
        let (lo, hi) = (hits.iter().min().unwrap(), hits.iter().max().unwrap());
        assert!(*lo > 480 && *hi < 720, "{lo} {hi}");
    }

    #[test]
    fn log_scaled_probability_clamps() {
        assert!((log_scaled_probability(1.0, 100) - 100f64.ln() / 100.0).abs() < 1e-15);
        assert_eq!(log_scaled_probability(100.0, 10), 1.0);
    }
}
