//! Reproducible parallel random streams.
//!
//! Every consumer derives its generator as a pure function of the master
//! seed and a label path (experiment id, grid point, trial index, ...):
//! the labels are absorbed into a SplitMix64 state whose output expands
//! into a 256-bit ChaCha12 seed. Streams are therefore independent of
//! worker-thread count and scheduling order.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive the ChaCha12 stream for `(master_seed, labels...)`.
pub fn derive_rng(master_seed: u64, labels: &[u64]) -> ChaCha12Rng {
    let mut state = mix(master_seed ^ 0x6A09_E667_F3BC_C908);
    for &label in labels {
        state = mix(state.wrapping_add(GOLDEN).wrapping_add(label));
    }
    let mut seed = [0u8; 32];
    let mut s = state;
    for chunk in seed.chunks_mut(8) {
        s = mix(s.wrapping_add(GOLDEN));
        chunk.copy_from_slice(&s.to_le_bytes());
    }
    ChaCha12Rng::from_seed(seed)
}

/// Experiment domains keeping label paths disjoint across run kinds.
pub mod domain {
    pub const CLASSICAL_MISMATCH: u64 = 1;
    pub const QUANTUM_MISMATCH: u64 = 2;
    pub const IMPROVED_COMPARISON: u64 = 3;
}
