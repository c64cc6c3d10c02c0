//! Reproducible random streams.
//!
//! Every stream is a ChaCha8 generator seeded with a 64-bit value derived from
//! `(seed, trial)` by [`mix`]. The same pair always yields the same stream, so
//! any generator or seeder driven by an [`RngSeed`] is a pure function of it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer.
#[inline]
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives a stream seed from a base seed and an index:
/// `splitmix64(seed ^ splitmix64(index))`.
#[inline]
pub fn mix(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RngSeed {
    pub seed: u64,
    pub trial: u64,
}

impl RngSeed {
    pub const fn new(seed: u64, trial: u64) -> Self {
        Self { seed, trial }
    }

    /// The mixed 64-bit value this stream is keyed by.
    pub fn derived(&self) -> u64 {
        mix(self.seed, self.trial)
    }

    /// An independent sub-stream, e.g. for retry `k` of a generator.
    pub fn child(&self, index: u64) -> RngSeed {
        RngSeed::new(self.derived(), index)
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.derived())
    }
}
