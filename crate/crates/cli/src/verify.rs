//! Randomized verification of the selection capacity bounds.
//!
//! Each trial draws channel dimensions and a channel seed from its own
//! derived RNG, so the ensemble is fully determined by the master seed and
//! trial count, independent of thread count or execution order.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use mimo_select_core::channel::gen_gaussian;
use mimo_select_core::selection::{
    exhaustive_best, greedy_prune, theorem1_bound, theorem2_bound, Method, PruneOrder, Theorem,
    DEFAULT_ENUMERATION_CAP,
};
use mimo_select_core::{Error, Result};

use crate::seed::derive_seed;
use crate::SCHEMA_VERSION;

/// Largest channel dimension the harness will sweep.
pub const MAX_DIMENSION: usize = 8;

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub theorem: Theorem,
    pub method: Method,
    pub trials: u64,
    pub max_n: usize,
    pub powers: Vec<f64>,
    pub seed: u64,
}

/// One bound violation: which trial, which channel, which subset sizes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub trial: u64,
    pub channel_seed: u64,
    pub n_t: usize,
    pub n_r: usize,
    pub k_t: usize,
    pub k_r: usize,
    pub power: f64,
    pub slack_bits: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationRun {
    pub schema_version: u32,
    pub theorem: Theorem,
    pub method: Method,
    pub seed: u64,
    pub trials: u64,
    /// Channel dimensions are drawn uniformly from this inclusive range.
    pub dim_range: [usize; 2],
    pub power_set: Vec<f64>,
    pub failures: Vec<FailureRecord>,
    /// Smallest achieved-minus-bound over every trial, power, and subset
    /// size pair; `failures` is empty exactly when this is >= -1e-9.
    pub min_slack_bits: f64,
}

struct TrialOutcome {
    failures: Vec<FailureRecord>,
    min_slack: f64,
}

pub fn run_verify(cfg: &VerifyConfig) -> Result<VerificationRun> {
    if cfg.trials == 0 {
        return Err(Error::invalid("verification requires at least one trial"));
    }
    if cfg.max_n == 0 || cfg.max_n > MAX_DIMENSION {
        return Err(Error::invalid(format!(
            "max dimension must be in [1, {MAX_DIMENSION}], got {}",
            cfg.max_n
        )));
    }
    if cfg.powers.is_empty() {
        return Err(Error::invalid("power set must not be empty"));
    }
    for &p in &cfg.powers {
        if !p.is_finite() || p <= 0.0 {
            return Err(Error::invalid(format!(
                "powers must be finite and positive, got {p}"
            )));
        }
    }

    let done = AtomicU64::new(0);
    let step = (cfg.trials / 10).max(1);
    let outcomes: Vec<Result<TrialOutcome>> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let outcome = run_trial(cfg, trial);
            let n = done.fetch_add(1, Ordering::Relaxed) + 1;
            if n.is_multiple_of(step) || n == cfg.trials {
                eprintln!("verify: {n}/{} trials done", cfg.trials);
            }
            outcome
        })
        .collect();

    let mut failures = Vec::new();
    let mut min_slack = f64::INFINITY;
    for outcome in outcomes {
        let outcome = outcome?;
        failures.extend(outcome.failures);
        min_slack = min_slack.min(outcome.min_slack);
    }
    Ok(VerificationRun {
        schema_version: SCHEMA_VERSION,
        theorem: cfg.theorem,
        method: cfg.method,
        seed: cfg.seed,
        trials: cfg.trials,
        dim_range: [1, cfg.max_n],
        power_set: cfg.powers.clone(),
        failures,
        min_slack_bits: min_slack,
    })
}

fn run_trial(cfg: &VerifyConfig, trial: u64) -> Result<TrialOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, trial));
    let n_t = rng.random_range(1..=cfg.max_n);
    let n_r = rng.random_range(1..=cfg.max_n);
    let channel_seed = rng.next_u64();
    let channel = gen_gaussian(n_t, n_r, channel_seed)?;

    let mut failures = Vec::new();
    let mut min_slack = f64::INFINITY;
    for &power in &cfg.powers {
        for k_t in 1..=n_t {
            for k_r in 1..=n_r {
                let achieved = match cfg.method {
                    Method::Exhaustive => {
                        exhaustive_best(&channel, power, k_t, k_r, DEFAULT_ENUMERATION_CAP)?
                            .capacity_bits
                    }
                    Method::Greedy => {
                        greedy_prune(&channel, power, k_t, k_r, PruneOrder::RxFirst)?.capacity_bits
                    }
                };
                let report = match cfg.theorem {
                    Theorem::One => theorem1_bound(&channel, power, k_t, k_r, achieved)?,
                    Theorem::Two => theorem2_bound(&channel, power, k_t, k_r, achieved)?,
                };
                min_slack = min_slack.min(report.slack_bits);
                if !report.satisfied {
                    failures.push(FailureRecord {
                        trial,
                        channel_seed,
                        n_t,
                        n_r,
                        k_t,
                        k_r,
                        power,
                        slack_bits: report.slack_bits,
                    });
                }
            }
        }
    }
    Ok(TrialOutcome {
        failures,
        min_slack,
    })
}
