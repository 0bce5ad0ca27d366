//! Seeded randomness.
//!
//! Every random draw in the crate comes from a [`ChaCha8Rng`] seeded through
//! `seed_from_u64`. Experiments never share one stream between samples: sample
//! `i` of a run with master seed `s` uses its own generator seeded with
//! [`subseed`]`(s, i)`, so results do not depend on how samples are scheduled
//! across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Human-readable statement of the stream-split rule, echoed into reports.
pub const SUBSEED_RULE: &str =
    "subseed(i) = splitmix64(master ^ splitmix64(i + 0x9E3779B97F4A7C15)); rng = ChaCha8Rng::seed_from_u64(subseed)";

pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Per-sample seed derived from the master seed and the sample index only.
pub fn subseed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index.wrapping_add(0x9E37_79B9_7F4A_7C15)))
}

pub fn sample_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
