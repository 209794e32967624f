//! Counter-based random streams.
//!
//! Sample `i` of a computation seeded with `seed` always reads the same
//! words of the same ChaCha8 keystream, whichever thread draws it.

use crate::sphere::SpherePoint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// 32-bit words consumed per sample (two `f64` draws).
pub const WORDS_PER_SAMPLE: u128 = 4;

/// Generator positioned at the start of sample `index`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_word_pos(WORDS_PER_SAMPLE * index as u128);
    rng
}

/// An independent keystream for, e.g., one of several parallel chains.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Two uniform variates in `[0, 1)`.
pub fn uniform_pair<R: Rng>(rng: &mut R) -> (f64, f64) {
    (rng.random::<f64>(), rng.random::<f64>())
}

/// Area-preserving map from the unit square to the sphere:
/// height `1 - 2 u1`, longitude `2 pi u2`.
pub fn sphere_point(u1: f64, u2: f64) -> SpherePoint {
    let z = 1.0 - 2.0 * u1;
    let r = (1.0 - z * z).max(0.0).sqrt();
    let phi = std::f64::consts::TAU * u2;
    SpherePoint::from_unit_vector([r * phi.cos(), r * phi.sin(), z])
}
