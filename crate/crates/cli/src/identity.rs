//! Identity sweeps over random Gram forms.
//!
//! Every trial builds the Gram form of a fresh seeded Gaussian channel at
//! unit power and checks the requested identities; errors are aggregated as
//! a maximum over trials per (identity, k) slot.

use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use mimo_select_core::channel::gen_gaussian;
use mimo_select_core::identities::{
    verify_avg_det_bound, verify_derivative_special_case, verify_induction_step, verify_property1,
    verify_symmetric_coeff, IdentityKind, IdentityReport,
};
use mimo_select_core::matrix::{gram, HermitianForm};
use mimo_select_core::{Error, Result};

use crate::seed::derive_seed;
use crate::verify::MAX_DIMENSION;
use crate::SCHEMA_VERSION;

/// Which subset sizes to check: one value or the full valid range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KSpec {
    All,
    Single(usize),
}

impl FromStr for KSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(KSpec::All);
        }
        s.parse::<usize>().map(KSpec::Single).map_err(|_| {
            Error::invalid(format!("k must be a positive integer or 'all', got '{s}'"))
        })
    }
}

#[derive(Debug, Clone)]
pub struct IdentityConfig {
    pub n: usize,
    pub k: KSpec,
    pub trials: u64,
    pub seed: u64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityRun {
    pub schema_version: u32,
    pub n: usize,
    /// "all" or the single checked subset size.
    pub k: String,
    pub trials: u64,
    pub seed: u64,
    pub tolerance: f64,
    /// One entry per (identity, k), errors maximized over all trials.
    pub reports: Vec<IdentityReport>,
    pub all_passed: bool,
}

/// The (identity, k) slots a config expands to.
fn plan(cfg: &IdentityConfig) -> Result<Vec<(IdentityKind, usize)>> {
    let n = cfg.n;
    let mut items = Vec::new();
    match cfg.k {
        KSpec::All => {
            for k in 1..n {
                items.push((IdentityKind::Property1, k));
            }
            items.push((IdentityKind::DerivativeSpecialCase, n - 1));
            for k in 1..n {
                items.push((IdentityKind::InductionStep, k));
            }
            for k in 1..=n {
                items.push((IdentityKind::SymmetricCoeff, k));
            }
            items.push((IdentityKind::AvgDetBound, n - 1));
        }
        KSpec::Single(k) => {
            if k == 0 || k > n {
                return Err(Error::invalid(format!(
                    "k must satisfy 1 <= k <= n = {n}, got {k}"
                )));
            }
            items.push((IdentityKind::Property1, k));
            if k == n - 1 {
                items.push((IdentityKind::DerivativeSpecialCase, k));
            }
            if k < n {
                items.push((IdentityKind::InductionStep, k));
            }
            items.push((IdentityKind::SymmetricCoeff, k));
            items.push((IdentityKind::AvgDetBound, n - 1));
        }
    }
    Ok(items)
}

fn check_one(f: &HermitianForm, kind: IdentityKind, k: usize, tol: f64) -> Result<IdentityReport> {
    match kind {
        IdentityKind::Property1 => verify_property1(f, k, tol),
        IdentityKind::DerivativeSpecialCase => verify_derivative_special_case(f, tol),
        IdentityKind::InductionStep => verify_induction_step(f, k, tol),
        IdentityKind::SymmetricCoeff => verify_symmetric_coeff(f, k, tol),
        IdentityKind::AvgDetBound => verify_avg_det_bound(f, tol),
    }
}

pub fn run_identity(cfg: &IdentityConfig) -> Result<IdentityRun> {
    if cfg.n < 2 || cfg.n > MAX_DIMENSION {
        return Err(Error::invalid(format!(
            "identity checks require 2 <= n <= {MAX_DIMENSION}, got {}",
            cfg.n
        )));
    }
    if cfg.trials == 0 {
        return Err(Error::invalid("identity checks require at least one trial"));
    }
    if !cfg.tolerance.is_finite() || cfg.tolerance <= 0.0 {
        return Err(Error::invalid(format!(
            "tolerance must be finite and positive, got {}",
            cfg.tolerance
        )));
    }
    let items = plan(cfg)?;

    // Per trial, the (abs, rel) error for every plan item.
    let per_trial: Vec<Result<Vec<(f64, f64)>>> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let channel = gen_gaussian(cfg.n, cfg.n, derive_seed(cfg.seed, trial))?;
            let f = gram(channel.matrix(), 1.0)?;
            items
                .iter()
                .map(|&(kind, k)| {
                    let rep = check_one(&f, kind, k, cfg.tolerance)?;
                    Ok((rep.max_abs_error, rep.max_rel_error))
                })
                .collect()
        })
        .collect();

    let mut max_abs = vec![0.0f64; items.len()];
    let mut max_rel = vec![0.0f64; items.len()];
    for trial in per_trial {
        for (slot, (abs, rel)) in trial?.into_iter().enumerate() {
            max_abs[slot] = max_abs[slot].max(abs);
            max_rel[slot] = max_rel[slot].max(rel);
        }
    }

    let reports: Vec<IdentityReport> = items
        .iter()
        .enumerate()
        .map(|(slot, &(kind, k))| IdentityReport {
            identity: kind,
            n: cfg.n,
            k,
            max_abs_error: max_abs[slot],
            max_rel_error: max_rel[slot],
            passed: max_rel[slot] <= cfg.tolerance,
            tolerance: cfg.tolerance,
        })
        .collect();
    let all_passed = reports.iter().all(|r| r.passed);
    Ok(IdentityRun {
        schema_version: SCHEMA_VERSION,
        n: cfg.n,
        k: match cfg.k {
            KSpec::All => "all".to_string(),
            KSpec::Single(k) => k.to_string(),
        },
        trials: cfg.trials,
        seed: cfg.seed,
        tolerance: cfg.tolerance,
        reports,
        all_passed,
    })
}
