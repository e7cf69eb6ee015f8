//! Seeded random streams.
//!
//! All randomness comes from ChaCha8. Independent trials use the stream
//! counter of the generator as a substream index, so trial `t` under seed
//! `s` draws the same numbers no matter which thread runs it or in what
//! order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for trial `index` under `seed`.
pub fn substream(seed: u64, index: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
