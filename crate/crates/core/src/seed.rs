//! Splittable seed derivation.
//!
//! Every random stream in an experiment is addressed by a path of components
//! below a root seed, e.g. `(root, candidate, rollout)`. Child seeds depend
//! only on the path, so results do not depend on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used for every stream in the crate.
pub type Rng = ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the seed of child `component` under `parent`.
pub fn derive(parent: u64, component: u64) -> u64 {
    splitmix64(splitmix64(parent) ^ component.wrapping_mul(GOLDEN).rotate_left(17))
}

/// Derives a seed from a whole path of components.
pub fn derive_path(root: u64, path: &[u64]) -> u64 {
    path.iter().fold(root, |acc, &c| derive(acc, c))
}

/// Stable 64-bit identifier for a textual path component (FNV-1a).
pub fn label(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01B3);
    }
    h
}

pub fn rng_from(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}
