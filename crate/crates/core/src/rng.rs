//! Seed derivation for reproducible parallel streams.
//!
//! Every random stream in the crate is a `ChaCha8Rng` seeded from a base seed
//! and a stream path. Work split across threads therefore draws the same
//! numbers regardless of how many workers run it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derive a child seed from `base` and a stream index.
pub fn derive_seed(base: u64, stream: u64) -> u64 {
    splitmix64(splitmix64(base) ^ splitmix64(stream.wrapping_add(0x632b_e59b_d9b4_e019)))
}

/// Derive a seed along a path of stream indices.
pub fn derive_path(base: u64, path: &[u64]) -> u64 {
    path.iter().fold(base, |s, &p| derive_seed(s, p))
}

pub fn stream(base: u64, index: u64) -> StreamRng {
    ChaCha8Rng::seed_from_u64(derive_seed(base, index))
}
