//! Seeded generation of random coin vectors.
//!
//! Reproducibility contract, so that ports in other languages draw the same
//! vectors:
//!
//! 1. Trial seed: `mix64(master_seed + 0x9E3779B97F4A7C15 * (trial_index + 1))`
//!    (wrapping arithmetic), where `mix64` is the SplitMix64 finalizer.
//! 2. Generator: xoshiro256** seeded from the trial seed through SplitMix64
//!    (`SeedableRng::seed_from_u64`).
//! 3. Uniform integer in `[k, m]`: with `r = m - k + 1`, draw 64-bit words
//!    until one falls below `⌊2^64 / r⌋·r` (computed as `⌊(2^64-1)/r⌋·r`),
//!    then return `k + word mod r`.
//! 4. A candidate is `n` such integers, sorted. It is accepted if it meets the
//!    configured condition; otherwise the next `n` draws from the same stream
//!    are tried.

use rand_xoshiro::rand_core::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

use crate::error::{Error, Result};
use crate::vectors::{satisfies_condition, CoinVector, ConditionKind};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone, PartialEq)]
pub struct SamplerConfig {
    pub n: usize,
    /// Lower entry bound, at least `n`.
    pub k: u64,
    /// Upper entry bound.
    pub m: u64,
    pub condition: ConditionKind,
    pub master_seed: u64,
    pub max_attempts_per_trial: u32,
}

impl SamplerConfig {
    pub const DEFAULT_MAX_ATTEMPTS: u32 = 10_000;

    /// Config with `k = n` and the default attempt cap.
    pub fn new(n: usize, m: u64, condition: ConditionKind, master_seed: u64) -> Self {
        SamplerConfig {
            n,
            k: n as u64,
            m,
            condition,
            master_seed,
            max_attempts_per_trial: Self::DEFAULT_MAX_ATTEMPTS,
        }
    }

    pub fn with_k(mut self, k: u64) -> Self {
        self.k = k;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n as u64;
        if self.n < 2 {
            return Err(Error::Validation(format!(
                "dimension {} is below 2",
                self.n
            )));
        }
        if n > self.m {
            return Err(Error::Validation(format!(
                "need n <= m, got n={} m={}",
                self.n, self.m
            )));
        }
        if self.k < n || self.k > self.m {
            return Err(Error::Validation(format!(
                "need n <= k <= m, got n={} k={} m={}",
                self.n, self.k, self.m
            )));
        }
        if self.max_attempts_per_trial == 0 {
            return Err(Error::Validation("max attempts must be positive".into()));
        }
        Ok(())
    }
}

/// SplitMix64 output function.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-trial seed. Injective in `trial_index` for a fixed master seed: the
/// golden-gamma multiple is a bijection (odd multiplier) and so is `mix64`.
pub fn derive_trial_seed(master_seed: u64, trial_index: u64) -> u64 {
    mix64(master_seed.wrapping_add(GOLDEN_GAMMA.wrapping_mul(trial_index.wrapping_add(1))))
}

pub fn trial_rng(master_seed: u64, trial_index: u64) -> Xoshiro256StarStar {
    Xoshiro256StarStar::seed_from_u64(derive_trial_seed(master_seed, trial_index))
}

/// Unbiased integer in `[lo, hi]` by rejection.
pub fn uniform_inclusive<R: Rng + ?Sized>(rng: &mut R, lo: u64, hi: u64) -> u64 {
    debug_assert!(lo <= hi);
    let span = hi - lo;
    if span == u64::MAX {
        return rng.next_u64();
    }
    let r = span + 1;
    let zone = (u64::MAX / r) * r;
    loop {
        let x = rng.next_u64();
        if x < zone {
            return lo + x % r;
        }
    }
}

pub fn sample_vector(cfg: &SamplerConfig, trial_index: u64) -> Result<CoinVector> {
    cfg.validate()?;
    let mut rng = trial_rng(cfg.master_seed, trial_index);
    let mut draw = vec![0u64; cfg.n];
    for _ in 0..cfg.max_attempts_per_trial {
        for slot in draw.iter_mut() {
            *slot = uniform_inclusive(&mut rng, cfg.k, cfg.m);
        }
        // gcd > 1 fails construction; treat it as a rejection
        if let Ok(v) = CoinVector::new(&draw) {
            if satisfies_condition(&v, cfg.condition) {
                return Ok(v);
            }
        }
    }
    Err(Error::SamplingExhausted {
        attempts: cfg.max_attempts_per_trial,
        n: cfg.n,
        k: cfg.k,
        m: cfg.m,
        condition: cfg.condition.to_string(),
    })
}
