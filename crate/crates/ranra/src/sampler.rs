//! Bit-exact seeded sampling: every diversity cycle is made mandatory
//! independently with probability `p`.
//!
//! The generator is splitmix64, chosen because its short published recurrence
//! reproduces bit-for-bit in any language. One 64-bit draw is consumed per
//! cycle in ascending canonical index order, even at `p = 0` or `p = 1`, so
//! stream positions are stable under config changes. A cycle is mandatory iff
//! its draw `u` satisfies `u < floor(p * 2^64)` (with `p = 1` meaning always).

use crate::cycles::CycleIndexer;
use crate::structure::CycleStructure;
use crate::{Error, Result, MAX_N};
use rayon::prelude::*;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// The splitmix64 generator.
#[derive(Clone, Copy, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// Parameters of one draw from the model.
#[derive(Clone, Copy, Debug)]
pub struct SamplerConfig {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

impl SamplerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::ZeroAtoms);
        }
        if self.n > MAX_N {
            return Err(Error::TooManyAtoms {
                n: self.n,
                max: MAX_N,
            });
        }
        if !(self.p >= 0.0 && self.p <= 1.0) {
            return Err(Error::InvalidProbability { p: self.p });
        }
        Ok(())
    }
}

/// Draws one structure. Identical `(n, p, seed)` yield bit-identical results
/// on every platform.
pub fn sample(cfg: &SamplerConfig) -> Result<CycleStructure> {
    cfg.validate()?;
    let total = CycleIndexer::new(cfg.n)?.total();
    let mut s = CycleStructure::empty(cfg.n)?;
    // Multiplying by 2^64 only shifts the exponent, so the product is exact
    // and the cast truncates to floor(p * 2^64) for p < 1.
    let threshold = if cfg.p >= 1.0 {
        None
    } else {
        Some((cfg.p * 18_446_744_073_709_551_616.0) as u64)
    };
    let mut rng = SplitMix64::new(cfg.seed);
    for idx in 0..total {
        let u = rng.next_u64();
        let mandatory = match threshold {
            None => true,
            Some(t) => u < t,
        };
        if mandatory {
            s.set_mandatory_idx(idx);
        }
    }
    Ok(s)
}

/// Decorrelated per-trial seed: the splitmix64 step applied to
/// `master_seed + trial_index * GOLDEN_GAMMA` (mod 2^64). Equivalently, trial
/// `i` receives the `(i+1)`-th output of the splitmix64 stream seeded with
/// `master_seed`, independent of evaluation order.
pub fn trial_seed(master_seed: u64, trial_index: u64) -> u64 {
    SplitMix64::new(master_seed.wrapping_add(trial_index.wrapping_mul(GOLDEN_GAMMA))).next_u64()
}

/// Per-cycle mandatory frequency over `trials` independent samples; trial `i`
/// is seeded with `trial_seed(seed, i)`. Trials run in parallel and merge by
/// exact integer counts, so the result does not depend on scheduling.
pub fn empirical_cycle_frequency(n: usize, p: f64, seed: u64, trials: u64) -> Result<Vec<f64>> {
    if trials == 0 {
        return Err(Error::ZeroTrials);
    }
    let total = CycleIndexer::new(n)?.total();
    SamplerConfig { n, p, seed }.validate()?;
    let counts = (0..trials)
        .into_par_iter()
        .fold(
            || vec![0u64; total],
            |mut acc, t| {
                let s = sample(&SamplerConfig {
                    n,
                    p,
                    seed: trial_seed(seed, t),
                })
                .expect("config validated");
                for (idx, slot) in acc.iter_mut().enumerate() {
                    *slot += u64::from(s.is_mandatory_idx(idx));
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; total],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok(counts
        .into_iter()
        .map(|c| c as f64 / trials as f64)
        .collect())
}
