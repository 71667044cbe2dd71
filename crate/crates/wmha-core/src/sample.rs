//! Seeded sampling for checks on lazily presented structures.
//!
//! Exhaustive verification is impossible over an infinite basis; sampled
//! checks draw from a deterministic, seeded stream so results are
//! reproducible for a fixed `(budget, seed)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform in `0..bound`; `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.rng.gen_range(0..bound)
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.rng.gen_range(0..len)
    }

    /// Small nonzero rational with numerator and denominator in `1..=9`.
    pub fn scalar(&mut self) -> crate::scalar::Scalar {
        let num = self.rng.gen_range(1..=9i64) * if self.rng.gen_bool(0.5) { 1 } else { -1 };
        let den = self.rng.gen_range(1..=9i64);
        crate::scalar::Scalar::fraction(num, den)
    }
}
