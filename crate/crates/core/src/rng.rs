//! Seeded, splittable randomness.
//!
//! Every randomized routine takes a `u64` seed. Independent sub-streams (one per sample,
//! per retry, per worker chunk) are derived with [`stream`], so results do not depend on how
//! work is scheduled.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The `index`-th independent stream under `seed`.
pub fn stream(seed: u64, index: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
