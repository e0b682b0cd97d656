//! Seedable deterministic random streams with substream derivation.
//!
//! Every sampling operation in this crate takes an explicit [`RngStream`].
//! A stream is a pure function of `(seed, path)`: two streams built from the
//! same pair emit bit-identical sequences, and streams with different paths
//! are statistically independent for test purposes. Substreams are derived
//! from the parent's `(seed, path)`, never from its consumed state, so a
//! derived stream does not depend on how much of the parent was used.

use std::f64::consts::TAU;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Counter-mode SplitMix64 stream keyed by a seed and a derivation path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RngStream {
    seed: u64,
    path: Vec<u64>,
    state: u64,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self::with_path(seed, &[])
    }

    pub fn with_path(seed: u64, path: &[u64]) -> Self {
        let mut state = splitmix64(seed ^ GOLDEN_GAMMA);
        for &leg in path {
            state = splitmix64(state ^ splitmix64(leg.wrapping_mul(GOLDEN_GAMMA) ^ 0x5851_f42d_4c95_7f2d));
        }
        Self {
            seed,
            path: path.to_vec(),
            state,
        }
    }

    /// Derive the `index`-th child stream. Independent of the parent's
    /// position in its own sequence.
    pub fn substream(&self, index: u64) -> Self {
        let mut path = self.path.clone();
        path.push(index);
        Self::with_path(self.seed, &path)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn path(&self) -> &[u64] {
        &self.path
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        splitmix64(self.state)
    }

    /// Uniform in `[0, 1)` with 53 bits of mantissa.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in the open interval `(0, 1)`; safe as a log/ratio argument.
    #[inline]
    pub fn open01(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) / (1u64 << 53) as f64
    }

    /// Uniform in `[lo, hi)`.
    #[inline]
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Standard normal via Box-Muller (one value per call).
    #[inline]
    pub fn normal(&mut self) -> f64 {
        let r = (-2.0 * self.open01().ln()).sqrt();
        r * (TAU * self.next_f64()).cos()
    }

    /// Standard exponential.
    #[inline]
    pub fn exponential(&mut self) -> f64 {
        -self.open01().ln()
    }

    /// Index uniform in `0..n` (rejection-free enough for sampling use).
    #[inline]
    pub fn index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        // 53-bit uniform scaled; bias is < 2^-53 * n, negligible for n << 2^40.
        (self.next_f64() * n as f64) as usize % n
    }
}
