use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeded source of measurement randomness.
///
/// Identical seeds give identical draw sequences on every platform. A source
/// may also carry a script of forced register outcomes, consumed one per
/// measurement before any random draw; this reproduces a specific measurement
/// record exactly (the outcome must still have nonzero Born probability).
#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    rng: ChaCha8Rng,
    forced: VecDeque<usize>,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
            forced: VecDeque::new(),
        }
    }

    /// A source whose next measurements return `outcomes` in order.
    ///
    /// Each outcome is the measured register value, read MSB-first over the
    /// measured targets.
    pub fn scripted(seed: u64, outcomes: impl IntoIterator<Item = usize>) -> Self {
        let mut src = Self::new(seed);
        src.forced.extend(outcomes);
        src
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform draw in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// Uniform integer in `[lo, hi]`.
    pub fn range_inclusive(&mut self, lo: u64, hi: u64) -> u64 {
        self.rng.random_range(lo..=hi)
    }

    pub(crate) fn take_forced(&mut self) -> Option<usize> {
        self.forced.pop_front()
    }

    /// Sample an index from a discrete distribution given as probabilities.
    pub fn sample_index(&mut self, probs: &[f64]) -> usize {
        let total: f64 = probs.iter().sum();
        let target = self.uniform() * total;
        let mut acc = 0.0;
        let mut last_nonzero = 0;
        for (i, &p) in probs.iter().enumerate() {
            if p > 0.0 {
                last_nonzero = i;
            }
            acc += p;
            if target < acc {
                return i;
            }
        }
        last_nonzero
    }
}
