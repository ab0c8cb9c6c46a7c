//! Deterministic random-number streams.
//!
//! Every stochastic routine in the crate draws from a [`SeedStream`], a
//! ChaCha12 generator keyed by an explicit seed. Independent substreams are
//! derived by mixing a label into the parent seed, so experiments can fan out
//! over grid points without sharing or splitting generator state. Rerunning
//! with the same master seed reproduces every draw.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// Bit-mixing finalizer from splitmix64; decorrelates derived seeds.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seeded random stream; the sole source of randomness in the crate.
pub struct SeedStream {
    seed: u64,
    rng: ChaCha12Rng,
}

impl SeedStream {
    /// Creates a stream keyed by `seed`.
    pub fn new(seed: u64) -> Self {
        SeedStream {
            seed,
            rng: ChaCha12Rng::seed_from_u64(seed),
        }
    }

    /// Seed this stream was keyed with.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Derives an independent substream for (`label`, `index`).
    ///
    /// The derivation is pure: it depends only on the parent seed, not on how
    /// many values the parent has produced.
    pub fn substream(&self, label: &str, index: u64) -> SeedStream {
        let mut h = self.seed;
        for &b in label.as_bytes() {
            h = splitmix64(h ^ u64::from(b));
        }
        SeedStream::new(splitmix64(h ^ index))
    }

    /// Uniform draw from `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }

    /// Uniform draw from `[lo, hi)`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Standard normal draw (Box-Muller).
    pub fn normal(&mut self) -> f64 {
        // u clamped away from 0 so the log is finite.
        let u = self.rng.gen::<f64>().max(f64::MIN_POSITIVE);
        let v = self.rng.gen::<f64>();
        (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos()
    }

    /// Uniform integer in `[0, n)`.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0, "below(0) is empty");
        self.rng.gen_range(0..n)
    }

    /// Bernoulli draw with success probability `p`.
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform() < p
    }

    /// Index drawn proportionally to the non-negative `weights`.
    ///
    /// Returns `None` when the weights sum to zero.
    pub fn weighted_index(&mut self, weights: &[f64]) -> Option<usize> {
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return None;
        }
        let mut u = self.uniform() * total;
        for (i, &w) in weights.iter().enumerate() {
            u -= w;
            if u < 0.0 {
                return Some(i);
            }
        }
        Some(weights.len() - 1)
    }
}
