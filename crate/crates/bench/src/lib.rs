//! Shared fixtures for the benchmarks.

use qdouble_core::qmatrix::{Gen, QElement};
use qdouble_core::{QzContext, RatFunc, Result};

/// Deterministic pseudo-random words over the generator alphabet.
pub fn words(n: usize, len: usize, count: usize) -> Vec<Vec<Gen>> {
    // simple LCG; benchmarks only need variety, not statistical quality
    let mut state = 0x2545f491u64;
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 33) as usize
    };
    (0..count)
        .map(|_| {
            (0..len)
                .map(|_| Gen::new(next() % n + 1, next() % n + 1))
                .collect()
        })
        .collect()
}

pub fn element_from_word(ctx: &QzContext, w: &[Gen]) -> Result<QElement> {
    qdouble_core::qmatrix::normal_form(ctx, RatFunc::one(), 0, w)
}
