//! Counter-keyed randomness.
//!
//! Every random draw in the crate is addressed by a `(seed, stream)` pair so
//! that results do not depend on iteration order or on how work is split
//! across threads.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A generator positioned at the start of `stream` under `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Derives an independent child seed from a master seed and a tag.
pub fn derive_seed(master: u64, tag: u64) -> u64 {
    // Stream 0 is left for direct use of the master seed.
    stream_rng(master, tag.wrapping_add(1) | (1 << 63)).next_u64()
}

fn unit(bits: u64) -> f64 {
    // 53 high bits give an exactly representable value in [0, 1).
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// A single uniform draw in `[0, 1)` keyed by `(seed, index)`: the
/// `index`-th 64-bit output of stream 0 under `seed`.
pub fn keyed_uniform(seed: u64, index: u64) -> f64 {
    let mut rng = stream_rng(seed, 0);
    rng.set_word_pos(2 * index as u128);
    unit(rng.next_u64())
}

/// `keyed_uniform(seed, i)` for `i` in `0..len`, in one sequential pass.
pub fn keyed_uniforms(seed: u64, len: usize) -> Vec<f64> {
    let mut rng = stream_rng(seed, 0);
    (0..len).map(|_| unit(rng.next_u64())).collect()
}
