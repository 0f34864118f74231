//! Seeded randomness.
//!
//! All generators take an explicit [`HdRng`] handle. The stream is ChaCha8,
//! whose output is specified independently of platform and crate version, so
//! a [`Seed`] fully determines every random hypervector and tie-break.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Random number generator used throughout the crate.
pub type HdRng = ChaCha8Rng;

/// A 64-bit seed. Identical seeds and identical call sequences produce
/// bit-identical outputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Seed(pub u64);

impl Seed {
    pub fn rng(self) -> HdRng {
        HdRng::seed_from_u64(self.0)
    }

    /// Generator for an independent sub-stream, used to split work per task
    /// without sharing one handle.
    pub fn stream(self, stream: u64) -> HdRng {
        let mut rng = self.rng();
        rng.set_stream(stream);
        rng
    }

    /// Deterministically derives a distinct seed, e.g. one per repetition.
    pub fn derive(self, index: u64) -> Seed {
        // splitmix64 finalizer
        let mut z = self
            .0
            .wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        Seed(z ^ (z >> 31))
    }
}

impl From<u64> for Seed {
    fn from(v: u64) -> Self {
        Seed(v)
    }
}
