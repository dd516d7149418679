//! SplitMix64.
//!
//! State is a single `u64`. Each draw does
//!
//! ```text
//! state = state + 0x9E3779B97F4A7C15            (mod 2^64)
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9       (mod 2^64)
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB       (mod 2^64)
//! output z ^ (z >> 31)
//! ```
//!
//! Derived draws:
//!
//! * `below(b)` is `(x * b) >> 64` on the 128-bit product (no rejection).
//! * `chance(a/b)` is true iff `(x * b) >> 64 < a`, so `1` always hits and `0`
//!   never does.

use crate::rational::Rational;

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish value in `0..bound`; `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }

    /// Bernoulli draw with an exact rational probability, clamped to [0, 1].
    /// Always consumes one draw.
    pub fn chance(&mut self, p: Rational) -> bool {
        let x = self.next_u64();
        let (a, b) = (*p.numer(), *p.denom());
        if a <= 0 {
            return false;
        }
        if a >= b {
            return true;
        }
        (((x as u128) * (b as u128)) >> 64) < a as u128
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}
