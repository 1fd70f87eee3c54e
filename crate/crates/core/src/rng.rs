//! Deterministic, splittable pseudorandomness.
//!
//! The generator is counter-based SplitMix64: draw `i` from seed `s` is
//! `mix64(s + i * GAMMA)` where `mix64` is Vigna's 64-bit finalizer. The
//! state is just `(seed, counter)`, so identical seeds and call sequences
//! always reproduce identical outputs, and independent streams can be
//! derived from `(seed, index)` without consuming the parent stream.
//! Non-cryptographic.

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const SPLIT_TAG: u64 = 0xA076_1D64_78BD_642F;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Debug)]
pub struct Rng {
    seed: u64,
    counter: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { seed, counter: 0 }
    }

    /// Independent stream derived from this generator's seed and `index`.
    ///
    /// Pure in `(seed, index)`: splitting never consumes or perturbs the
    /// parent stream, so split-by-index streams can be handed to concurrent
    /// workers and still reproduce the sequential result.
    pub fn split(&self, index: u64) -> Rng {
        Rng::new(mix64(
            self.seed ^ mix64(index.wrapping_mul(GAMMA) ^ SPLIT_TAG),
        ))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix64(self.seed.wrapping_add(self.counter.wrapping_mul(GAMMA)))
    }

    /// Uniform integer in `0..n`, exactly uniform via bitmask rejection.
    ///
    /// Draws are rejected only when they fall outside the smallest power of
    /// two covering `n`, so every accepted value has probability exactly
    /// `1/n`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "below(0) is undefined");
        if n == 1 {
            return 0;
        }
        let mask = u64::MAX >> (n - 1).leading_zeros();
        loop {
            let x = self.next_u64() & mask;
            if x < n {
                return x;
            }
        }
    }

    /// In-place Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}
