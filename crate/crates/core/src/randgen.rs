//! Seeded samplers for `G(n, p)` and `G(t, m)`.
//!
//! Every sampler is a pure function of its parameters and a [`Seed`]. The
//! generator is ChaCha8 keyed by `Seed::value` with `Seed::stream_id` as the
//! stream selector, and all conversions from raw words to floats and ranges
//! are done here so output is bit-identical across platforms.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SampleError {
    #[error("cannot place {m} edges on {t} vertices (at most {max})")]
    TooManyEdges { t: usize, m: usize, max: usize },
    #[error("t = {t} must be at least d + 1 = {}", d + 1)]
    TooFewVertices { t: usize, d: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed {
    pub value: u64,
    pub stream_id: u64,
}

impl Seed {
    pub const fn new(value: u64, stream_id: u64) -> Self {
        Seed { value, stream_id }
    }

    pub fn rng(&self) -> SeededRng {
        let mut inner = ChaCha8Rng::seed_from_u64(self.value);
        inner.set_stream(self.stream_id);
        SeededRng { inner }
    }

    /// Independent child seed number `index` of this seed. Children of
    /// distinct `(value, stream_id)` pairs use distinct keys.
    pub fn substream(&self, index: u64) -> Seed {
        Seed {
            value: splitmix64(self.value ^ splitmix64(self.stream_id.wrapping_add(0x5EED))),
            stream_id: index,
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Thin wrapper with platform-independent float and range conversions.
#[derive(Debug, Clone)]
pub struct SeededRng {
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn unit_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// True with probability `p`; `p <= 0` never, `p >= 1` always.
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.unit_f64() < p
    }

    /// Uniform in `0..bound` by rejection. `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.below(bound as u64) as usize
    }
}

/// Each of the `C(n, 2)` pairs is an edge independently with probability `p`,
/// decided in lexicographic pair order.
pub fn sample_gnp(n: usize, p: f64, seed: Seed) -> Graph {
    let mut rng = seed.rng();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.bernoulli(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("sampled edges are valid")
}

/// Uniform graph on `t` vertices with exactly `m` edges: partial Fisher–Yates
/// over the lexicographic list of all pairs.
pub fn sample_gnm(t: usize, m: usize, seed: Seed) -> Result<Graph, SampleError> {
    let max = t * t.saturating_sub(1) / 2;
    if m > max {
        return Err(SampleError::TooManyEdges { t, m, max });
    }
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(max);
    for u in 0..t {
        for v in u + 1..t {
            pairs.push((u, v));
        }
    }
    let mut rng = seed.rng();
    for i in 0..m {
        let j = i + rng.index(max - i);
        pairs.swap(i, j);
    }
    Ok(Graph::from_edges(t, &pairs[..m]).expect("distinct pairs form a simple graph"))
}

/// Number of edges of a random graph with `t` vertices and average degree
/// `d`: `⌊t·d/2⌋`.
pub fn round_edges(t: usize, d: usize) -> usize {
    t * d / 2
}

/// Sample from `G(t, ⌊t·d/2⌋)`.
pub fn sample_h(t: usize, d: usize, seed: Seed) -> Result<Graph, SampleError> {
    if t < d + 1 {
        return Err(SampleError::TooFewVertices { t, d });
    }
    sample_gnm(t, round_edges(t, d), seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gnp_extremes() {
        let s = Seed::new(1, 0);
        assert_eq!(sample_gnp(7, 0.0, s).edge_count(), 0);
        assert_eq!(sample_gnp(7, 1.0, s), Graph::complete(7));
    }

    #[test]
    fn gnp_edge_count_moments() {
        // mean C(100,2)·½ = 2475, σ of one sample = √(4950·¼); the mean over
        // 200 samples must sit within 3σ/√200 of 2475
        let n_samples = 200;
        let total: usize = (0..n_samples)
            .map(|i| sample_gnp(100, 0.5, Seed::new(2024, i)).edge_count())
            .sum();
        let mean = total as f64 / n_samples as f64;
        let sigma = (4950.0f64 * 0.25).sqrt() / (n_samples as f64).sqrt();
        assert!((mean - 2475.0).abs() < 3.0 * sigma, "mean {mean}");
        // the looser per-sample band
        let sigma_loose = (2475.0f64 * 0.5).sqrt();
        assert!((mean - 2475.0).abs() < 3.0 * sigma_loose);
    }

    #[test]
    fn gnm_trivial_cases() {
        for i in 0..20 {
            assert_eq!(
                sample_gnm(3, 3, Seed::new(i, 0)).unwrap(),
                Graph::complete(3)
            );
            assert_eq!(
                sample_gnm(2, 1, Seed::new(i, 0)).unwrap(),
                Graph::complete(2)
            );
        }
        assert!(sample_gnm(3, 4, Seed::new(0, 0)).is_err());
        assert_eq!(sample_gnm(0, 0, Seed::new(0, 0)).unwrap(), Graph::empty(0));
    }

    #[test]
    fn gnm_uniform_over_edge_pairs() {
        // t=4, m=2: 15 equally likely edge sets
        let trials = 15_000u64;
        let mut counts = std::collections::HashMap::new();
        for i in 0..trials {
            let g = sample_gnm(4, 2, Seed::new(77, i)).unwrap();
            *counts.entry(g.edges().collect::<Vec<_>>()).or_insert(0u64) += 1;
        }
        assert_eq!(counts.len(), 15);
        let p = 1.0 / 15.0;
        let sigma = (trials as f64 * p * (1.0 - p)).sqrt();
        for &c in counts.values() {
            assert!(
                (c as f64 - trials as f64 * p).abs() < 3.0 * sigma,
                "count {c}"
            );
        }
    }

    #[test]
    fn sample_h_edge_rounding() {
        assert_eq!(sample_h(4, 3, Seed::new(5, 5)).unwrap(), Graph::complete(4));
        assert_eq!(sample_h(5, 2, Seed::new(5, 5)).unwrap().edge_count(), 5);
        assert_eq!(sample_h(5, 3, Seed::new(5, 5)).unwrap().edge_count(), 7);
        assert!(sample_h(3, 3, Seed::new(0, 0)).is_err());
    }

    #[test]
    fn determinism_golden() {
        let g = sample_gnp(8, 0.5, Seed::new(42, 0));
        assert_eq!(g, sample_gnp(8, 0.5, Seed::new(42, 0)));
        assert_ne!(g, sample_gnp(8, 0.5, Seed::new(42, 1)));
        assert_eq!(g.to_text(), GOLDEN_GNP_8);
        let h = sample_gnm(6, 5, Seed::new(42, 3)).unwrap();
        assert_eq!(h.to_text(), GOLDEN_GNM_6_5);
    }

    #[test]
    fn substreams_differ() {
        let s = Seed::new(9, 0);
        assert_ne!(s.substream(0), s.substream(1));
        assert_ne!(Seed::new(9, 1).substream(0), s.substream(0));
        assert_ne!(
            s.substream(0).rng().next_u64(),
            s.substream(1).rng().next_u64()
        );
    }

    const GOLDEN_GNP_8: &str =
        "8 14\n0 3\n0 5\n0 6\n0 7\n1 4\n2 5\n2 7\n3 4\n3 5\n3 6\n3 7\n4 6\n4 7\n5 6\n";
    const GOLDEN_GNM_6_5: &str = "6 5\n0 3\n0 4\n1 3\n2 3\n2 5\n";
}
