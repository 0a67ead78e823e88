//! Seeded Monte-Carlo estimation of hitting times.
//!
//! Trial `t` draws from a ChaCha8 stream keyed by `seed` with stream id `t`,
//! and per-trial step counts are reduced with exact integer sums, so the
//! statistics are bit-identical for any thread count or scheduling.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::circulant::CirculantWalk;
use crate::error::{domain, Error, Result};
use crate::scalar::Scalar;
use crate::Rational;

pub const DEFAULT_MAX_STEPS: u64 = 1_000_000_000;

/// Consistency threshold in standard errors.
pub const Z_MAX: f64 = 4.0;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimConfig {
    pub walk: CirculantWalk,
    /// Target vertex; the walk always starts at 0.
    pub target: usize,
    pub trials: u64,
    pub seed: u64,
    pub max_steps_per_trial: u64,
}

impl SimConfig {
    pub fn new(walk: CirculantWalk, target: usize, trials: u64, seed: u64) -> Self {
        Self {
            walk,
            target,
            trials,
            seed,
            max_steps_per_trial: DEFAULT_MAX_STEPS,
        }
    }

    pub fn with_max_steps(mut self, cap: u64) -> Self {
        self.max_steps_per_trial = cap;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return domain("trials must be at least 1");
        }
        let n = self.walk.modulus();
        if self.target == 0 || self.target >= n {
            return domain(format!("target must lie in 1..={}, got {}", n - 1, self.target));
        }
        if self.max_steps_per_trial == 0 {
            return domain("max_steps_per_trial must be at least 1");
        }
        Ok(())
    }
}

/// Summary statistics over the trials that reached the target.
///
/// `mean`, `variance` and `stderr` are NaN when every trial was truncated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimStats {
    pub trials: u64,
    pub mean: f64,
    pub variance: f64,
    pub stderr: f64,
    pub truncated_trials: u64,
}

impl SimStats {
    pub fn completed(&self) -> u64 {
        self.trials - self.truncated_trials
    }

    /// z-score of `exact` against this estimate.
    pub fn compare(&self, exact: &Rational) -> Result<Comparison> {
        if self.truncated_trials > 0 {
            return Err(Error::Truncated {
                truncated: self.truncated_trials,
                trials: self.trials,
            });
        }
        let diff = self.mean - Scalar::approx_f64(exact);
        let z = if self.stderr > 0.0 {
            diff / self.stderr
        } else if diff == 0.0 {
            0.0
        } else {
            diff.signum() * f64::INFINITY
        };
        Ok(if z.abs() <= Z_MAX {
            Comparison::Consistent { z }
        } else {
            Comparison::Inconsistent { z }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Comparison {
    Consistent { z: f64 },
    Inconsistent { z: f64 },
}

impl Comparison {
    pub fn z(&self) -> f64 {
        match *self {
            Comparison::Consistent { z } | Comparison::Inconsistent { z } => z,
        }
    }

    pub fn is_consistent(&self) -> bool {
        matches!(self, Comparison::Consistent { .. })
    }
}

#[derive(Debug, Default, Clone, Copy)]
struct Tally {
    sum: u128,
    sum_sq: u128,
    truncated: u64,
}

impl Tally {
    fn merge(self, other: Tally) -> Tally {
        Tally {
            sum: self.sum + other.sum,
            sum_sq: self.sum_sq + other.sum_sq,
            truncated: self.truncated + other.truncated,
        }
    }
}

/// Steps taken by trial `trial`, or `None` if it hit the cap.
fn run_trial(config: &SimConfig, trial: u64) -> Option<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(trial);
    let n = config.walk.modulus();
    let steps = config.walk.steps();
    let mut pos = 0usize;
    for taken in 1..=config.max_steps_per_trial {
        // `gen_range` rejects the partial top range, so there is no modulo bias.
        pos = (pos + steps[rng.gen_range(0..steps.len())]) % n;
        if pos == config.target {
            return Some(taken);
        }
    }
    None
}

pub fn simulate(config: &SimConfig) -> Result<SimStats> {
    config.validate()?;

    let tally = if config.walk.reaches(config.target) {
        (0..config.trials)
            .into_par_iter()
            .map(|t| match run_trial(config, t) {
                Some(k) => Tally {
                    sum: u128::from(k),
                    sum_sq: u128::from(k) * u128::from(k),
                    truncated: 0,
                },
                None => Tally {
                    truncated: 1,
                    ..Tally::default()
                },
            })
            .reduce(Tally::default, Tally::merge)
    } else {
        // Every trial would run to the cap.
        Tally {
            truncated: config.trials,
            ..Tally::default()
        }
    };

    let completed = config.trials - tally.truncated;
    let (mean, variance) = match completed {
        0 => (f64::NAN, f64::NAN),
        1 => (tally.sum as f64, 0.0),
        c => {
            let c = u128::from(c);
            let mean = tally.sum as f64 / c as f64;
            // c * sum_sq - sum^2 is a nonnegative integer; form it exactly.
            let spread = c * tally.sum_sq - tally.sum * tally.sum;
            (mean, spread as f64 / (c * (c - 1)) as f64)
        }
    };
    Ok(SimStats {
        trials: config.trials,
        mean,
        variance,
        stderr: (variance / completed as f64).sqrt(),
        truncated_trials: tally.truncated,
    })
}

/// Simulates `config` and compares the estimate with `exact`.
pub fn compare(config: &SimConfig, exact: &Rational) -> Result<Comparison> {
    simulate(config)?.compare(exact)
}
