//! Tightness probes: channels where a bound's capacity fraction is achieved
//! (exactly, or in a limit) by the best selection.

use serde::{Deserialize, Serialize};

use mimo_select_core::channel::{gen_all_ones, gen_parallel};
use mimo_select_core::selection::{exhaustive_best, DEFAULT_ENUMERATION_CAP};
use mimo_select_core::{Error, Result};

use crate::verify::MAX_DIMENSION;
use crate::SCHEMA_VERSION;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TightCase {
    /// All-ones channel: the selected-to-full capacity ratio approaches
    /// (k_t k_r)/(n_t n_r) as power goes to zero.
    AllOnesLowSnr,
    /// Identity channel: the ratio is exactly min(k_t,k_r)/n at any power.
    Parallel,
}

#[derive(Debug, Clone)]
pub struct TightConfig {
    pub case: TightCase,
    pub n_t: usize,
    pub n_r: usize,
    pub k_t: usize,
    pub k_r: usize,
    pub power: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TightnessReport {
    pub schema_version: u32,
    pub case: TightCase,
    pub n_t: usize,
    pub n_r: usize,
    pub k_t: usize,
    pub k_r: usize,
    pub power: f64,
    pub full_capacity_bits: f64,
    pub selected_capacity_bits: f64,
    pub ratio_observed: f64,
    pub ratio_predicted: f64,
    pub abs_error: f64,
}

pub fn run_tight(cfg: &TightConfig) -> Result<TightnessReport> {
    if cfg.n_t == 0 || cfg.n_r == 0 || cfg.n_t > MAX_DIMENSION || cfg.n_r > MAX_DIMENSION {
        return Err(Error::invalid(format!(
            "dimensions must be in [1, {MAX_DIMENSION}], got {}x{}",
            cfg.n_t, cfg.n_r
        )));
    }
    let channel = match cfg.case {
        TightCase::AllOnesLowSnr => gen_all_ones(cfg.n_t, cfg.n_r)?,
        TightCase::Parallel => {
            if cfg.n_t != cfg.n_r {
                return Err(Error::invalid(format!(
                    "the parallel case needs square dimensions, got {}x{}",
                    cfg.n_t, cfg.n_r
                )));
            }
            gen_parallel(cfg.n_t)?
        }
    };
    let full = channel.capacity(cfg.power)?.capacity_bits;
    let best = exhaustive_best(
        &channel,
        cfg.power,
        cfg.k_t,
        cfg.k_r,
        DEFAULT_ENUMERATION_CAP,
    )?;
    let ratio_observed = best.capacity_bits / full;
    let ratio_predicted = match cfg.case {
        TightCase::AllOnesLowSnr => (cfg.k_t * cfg.k_r) as f64 / (cfg.n_t * cfg.n_r) as f64,
        TightCase::Parallel => cfg.k_t.min(cfg.k_r) as f64 / cfg.n_t.min(cfg.n_r) as f64,
    };
    Ok(TightnessReport {
        schema_version: SCHEMA_VERSION,
        case: cfg.case,
        n_t: cfg.n_t,
        n_r: cfg.n_r,
        k_t: cfg.k_t,
        k_r: cfg.k_r,
        power: cfg.power,
        full_capacity_bits: full,
        selected_capacity_bits: best.capacity_bits,
        ratio_observed,
        ratio_predicted,
        abs_error: (ratio_observed - ratio_predicted).abs(),
    })
}
