//! Seed-derived random streams.
//!
//! Every draw in the crate flows from a scenario seed through [`stream`],
//! keyed by a tag path such as `[TAG_PERCEIVE, draw, candidate]`. Streams for
//! different tag paths are independent, so candidates can be processed in any
//! order (or in parallel) without changing results, and two runs that share a
//! seed share their draws (common random numbers).

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub(crate) const TAG_PERCEIVE: u64 = 1;
pub(crate) const TAG_HIRE: u64 = 2;
pub(crate) const TAG_REPLICATION: u64 = 3;
pub(crate) const TAG_GENERATOR: u64 = 4;

/// splitmix64 finalizer.
fn mix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn fold(seed: u64, tags: &[u64]) -> u64 {
    let mut acc = mix(seed);
    for &t in tags {
        acc = mix(acc ^ mix(t));
    }
    acc
}

/// An independent ChaCha stream for the given seed and tag path.
pub(crate) fn stream(seed: u64, tags: &[u64]) -> ChaCha8Rng {
    let mut acc = fold(seed, tags);
    let mut bytes = [0u8; 32];
    for chunk in bytes.chunks_exact_mut(8) {
        acc = mix(acc);
        chunk.copy_from_slice(&acc.to_le_bytes());
    }
    ChaCha8Rng::from_seed(bytes)
}

/// Scenario seed for replication `index` of a run seeded with `base_seed`.
pub(crate) fn replication_seed(base_seed: u64, index: u64) -> u64 {
    fold(base_seed, &[TAG_REPLICATION, index])
}
