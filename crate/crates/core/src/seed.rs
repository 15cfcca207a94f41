//! Per-item seed derivation.
//!
//! Every stochastic draw in the toolkit is taken from a ChaCha stream seeded
//! from `(global seed, stream label, ordinal)`, so results do not depend on
//! the order in which items are processed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random stream type used throughout the crate.
pub type Stream = ChaCha8Rng;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(FNV_OFFSET, |hash, &b| (hash ^ u64::from(b)).wrapping_mul(FNV_PRIME))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Mixes a global seed, a stream label and an ordinal into one 64-bit seed.
pub fn derive_seed(global: u64, label: &str, ordinal: u64) -> u64 {
    let mut h = splitmix64(global);
    h = splitmix64(h ^ fnv1a(label.as_bytes()));
    splitmix64(h ^ ordinal)
}

/// Seeded stream for item `ordinal` of stream `label`.
pub fn stream(global: u64, label: &str, ordinal: u64) -> Stream {
    Stream::seed_from_u64(derive_seed(global, label, ordinal))
}
