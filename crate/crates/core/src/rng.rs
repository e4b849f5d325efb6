//! Seed derivation and the sampling primitives shared by the generators.
//!
//! Every random draw in the crate comes from a ChaCha8 stream keyed by a
//! 64-bit seed, so an instance is a pure function of its seed. Seeds for
//! individual Monte Carlo trials are derived with [`derive_seed`], which mixes
//! the base seed with grid and trial indices. Refining a grid therefore never
//! reshuffles the trials that already exist.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::math;

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Hashes a base seed together with a list of indices into a new seed.
pub fn derive_seed(seed: u64, parts: &[u64]) -> u64 {
    parts
        .iter()
        .fold(splitmix64(seed), |acc, &p| splitmix64(acc ^ splitmix64(p.wrapping_add(GOLDEN))))
}

/// Seed of trial `trial` at grid point `grid_index`.
pub fn trial_seed(seed: u64, grid_index: usize, trial: usize) -> u64 {
    derive_seed(seed, &[grid_index as u64, trial as u64])
}

pub(crate) fn stream(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draw from the half-open interval (0, 1].
pub(crate) fn uniform_open0(rng: &mut impl RngCore) -> f64 {
    ((rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Calls `hit` with the indices in `0..total` selected by independent
/// Bernoulli(`p`) trials, in increasing order.
///
/// Uses geometric skips, so the expected cost is proportional to the number of
/// hits rather than to `total`.
pub(crate) fn bernoulli_indices(total: u64, p: f64, rng: &mut impl RngCore, mut hit: impl FnMut(u64)) {
    if total == 0 || p <= 0.0 {
        return;
    }
    if p >= 1.0 {
        (0..total).for_each(hit);
        return;
    }
    let log_miss = math::ln_1p(-p);
    let mut next = 0u64;
    loop {
        let skip = math::floor(math::ln(uniform_open0(rng)) / log_miss);
        if skip >= (total - next) as f64 {
            return;
        }
        next += skip as u64;
        hit(next);
        next += 1;
        if next >= total {
            return;
        }
    }
}
