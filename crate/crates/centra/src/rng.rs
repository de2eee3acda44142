//! Deterministic per-index random streams.
//!
//! Every random draw is keyed by `(master seed, purpose, index)`: the stream
//! for sample index `s` does not depend on evaluation order or on how work is
//! split across threads. A ChaCha8 generator keyed by a SplitMix64 expansion
//! of the triple serves as the counter-based construction, so replaying any
//! index in isolation reproduces the exact same draws.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Stream family for hyper-edge sampling.
pub(crate) const PURPOSE_HYPEREDGE: u64 = 0x4845;
/// Stream family for Rademacher sign vectors.
pub(crate) const PURPOSE_SIGN: u64 = 0x5347;

#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Generator for the stream `(seed, purpose, index)`.
pub(crate) fn derive_rng(seed: u64, purpose: u64, index: u64) -> ChaCha8Rng {
    let mut state = mix(seed ^ 0x9e37_79b9_7f4a_7c15);
    state = mix(state ^ purpose);
    state = mix(state ^ index);
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        chunk.copy_from_slice(&mix(state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// Rademacher signs for one sample column: entry `j` is the sign of trial `j`.
///
/// Signs are a pure function of `(seed, sample_index, j)`: extending `t`
/// leaves the first trials unchanged, and columns never depend on the order
/// in which samples were absorbed.
pub(crate) fn rademacher_signs(seed: u64, sample_index: u64, t: usize) -> Vec<i8> {
    let mut rng = derive_rng(seed, PURPOSE_SIGN, sample_index);
    let mut out = Vec::with_capacity(t);
    let mut word = 0u64;
    for j in 0..t {
        if j % 64 == 0 {
            word = rng.next_u64();
        }
        out.push(if word & 1 == 1 { 1 } else { -1 });
        word >>= 1;
    }
    out
}
