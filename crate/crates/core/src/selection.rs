//! Antenna subset selection and capacity lower bounds.
//!
//! Both search strategies optimize the same objective: the capacity of the
//! subchannel on `k_t` transmit and `k_r` receive antennas at a fixed power.
//! `exhaustive_best` scans every subset pair; `greedy_prune` removes one
//! antenna at a time, at each step keeping the subchannel of highest
//! capacity. Bound reports compare an achieved capacity against the
//! guaranteed fraction of full capacity.

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::channel::MimoChannel;
use crate::error::Error;
use crate::matrix::gram;
use crate::subset::{binomial, k_subsets, SubsetIndex};
use crate::Result;

/// Default cap on the number of subset pairs `exhaustive_best` may visit.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

/// Slack below which a bound is considered violated (bits).
pub const SLACK_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Selection {
    pub tx: SubsetIndex,
    pub rx: SubsetIndex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exhaustive,
    Greedy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Tx,
    Rx,
}

/// Which side the greedy pruner reduces first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PruneOrder {
    #[default]
    RxFirst,
    TxFirst,
}

/// One greedy removal: which side, the removed antenna's original 1-based
/// index, and the capacity of the remaining subchannel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RemovalStep {
    pub side: Side,
    pub removed: usize,
    pub capacity_after_bits: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionResult {
    pub selection: Selection,
    pub capacity_bits: f64,
    pub method: Method,
    /// Empty for the exhaustive method.
    pub trace: Vec<RemovalStep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    One,
    Two,
}

impl Serialize for Theorem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u8(match self {
            Theorem::One => 1,
            Theorem::Two => 2,
        })
    }
}

impl<'de> Deserialize<'de> for Theorem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match u8::deserialize(deserializer)? {
            1 => Ok(Theorem::One),
            2 => Ok(Theorem::Two),
            other => Err(de::Error::custom(format!(
                "theorem must be 1 or 2, got {other}"
            ))),
        }
    }
}

/// A lower bound on selected-subchannel capacity, evaluated against an
/// achieved value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub theorem: Theorem,
    pub full_capacity_bits: f64,
    /// Capacity fraction retained by the bound.
    pub fraction: f64,
    /// Additive gap in bits; zero under theorem 1.
    #[serde(rename = "gap_G_bits")]
    pub gap_g_bits: f64,
    pub bound_bits: f64,
    pub achieved_bits: f64,
    pub slack_bits: f64,
    pub satisfied: bool,
}

/// Capacity in bits of the subchannel on `tx`/`rx`, without building a full
/// report. This is the inner loop of both search strategies.
fn subchannel_capacity_bits(
    channel: &MimoChannel,
    power: f64,
    tx: &SubsetIndex,
    rx: &SubsetIndex,
) -> Result<f64> {
    let sub = channel.subchannel(tx, rx)?;
    Ok(gram(sub.matrix(), power)?.log_det()?.max(0.0))
}

fn validate_k(channel: &MimoChannel, k_t: usize, k_r: usize) -> Result<()> {
    if k_t == 0 || k_t > channel.n_t() {
        return Err(Error::invalid(format!(
            "k_t must satisfy 1 <= k_t <= n_t = {}, got {k_t}",
            channel.n_t()
        )));
    }
    if k_r == 0 || k_r > channel.n_r() {
        return Err(Error::invalid(format!(
            "k_r must satisfy 1 <= k_r <= n_r = {}, got {k_r}",
            channel.n_r()
        )));
    }
    Ok(())
}

/// Scans every `(k_t, k_r)` subset pair and returns the first maximizer in
/// lexicographic order (transmit subset major, receive subset minor).
///
/// Refuses to start when the pair count exceeds `cap`.
pub fn exhaustive_best(
    channel: &MimoChannel,
    power: f64,
    k_t: usize,
    k_r: usize,
    cap: u64,
) -> Result<SelectionResult> {
    validate_k(channel, k_t, k_r)?;
    let required =
        binomial(channel.n_t() as u64, k_t as u64) * binomial(channel.n_r() as u64, k_r as u64);
    if required > cap as u128 {
        return Err(Error::EnumerationCap { required, cap });
    }

    let mut best: Option<(Selection, f64)> = None;
    for tx in k_subsets(channel.n_t(), k_t) {
        for rx in k_subsets(channel.n_r(), k_r) {
            let bits = subchannel_capacity_bits(channel, power, &tx, &rx)?;
            let better = match &best {
                None => true,
                Some((_, best_bits)) => bits > *best_bits,
            };
            if better {
                best = Some((Selection { tx: tx.clone(), rx }, bits));
            }
        }
    }
    let (selection, capacity_bits) = best.expect("at least one subset pair exists");
    Ok(SelectionResult {
        selection,
        capacity_bits,
        method: Method::Exhaustive,
        trace: Vec::new(),
    })
}

/// Greedy antenna pruning: repeatedly drops the antenna whose removal leaves
/// the highest-capacity subchannel, reducing one side fully before the other.
///
/// Ties are broken toward removing the highest index, which keeps the
/// remaining subset lexicographically first.
pub fn greedy_prune(
    channel: &MimoChannel,
    power: f64,
    k_t: usize,
    k_r: usize,
    order: PruneOrder,
) -> Result<SelectionResult> {
    validate_k(channel, k_t, k_r)?;
    let mut tx = SubsetIndex::full(channel.n_t());
    let mut rx = SubsetIndex::full(channel.n_r());
    let mut trace = Vec::with_capacity((channel.n_t() - k_t) + (channel.n_r() - k_r));
    let mut last_bits: Option<f64> = None;

    let sides = match order {
        PruneOrder::RxFirst => [Side::Rx, Side::Tx],
        PruneOrder::TxFirst => [Side::Tx, Side::Rx],
    };
    for side in sides {
        let target = match side {
            Side::Tx => k_t,
            Side::Rx => k_r,
        };
        loop {
            let current = match side {
                Side::Tx => &tx,
                Side::Rx => &rx,
            };
            if current.len() <= target {
                break;
            }
            let mut chosen: Option<(usize, SubsetIndex, f64)> = None;
            for &m in current.members() {
                let candidate = current.without(m)?;
                let bits = match side {
                    Side::Tx => subchannel_capacity_bits(channel, power, &candidate, &rx)?,
                    Side::Rx => subchannel_capacity_bits(channel, power, &tx, &candidate)?,
                };
                // `>=` walks ascending indices, so exact ties resolve to the
                // highest removed index and the lexicographically first
                // surviving subset.
                let better = match &chosen {
                    None => true,
                    Some((_, _, best_bits)) => bits >= *best_bits,
                };
                if better {
                    chosen = Some((m, candidate, bits));
                }
            }
            let (removed, remaining, bits) =
                chosen.expect("a nonempty subset always has a removal candidate");
            match side {
                Side::Tx => tx = remaining,
                Side::Rx => rx = remaining,
            }
            trace.push(RemovalStep {
                side,
                removed,
                capacity_after_bits: bits,
            });
            last_bits = Some(bits);
        }
    }

    let capacity_bits = match last_bits {
        Some(bits) => bits,
        None => subchannel_capacity_bits(channel, power, &tx, &rx)?,
    };
    Ok(SelectionResult {
        selection: Selection { tx, rx },
        capacity_bits,
        method: Method::Greedy,
        trace,
    })
}

fn full_capacity_bits(channel: &MimoChannel, power: f64) -> Result<f64> {
    Ok(gram(channel.matrix(), power)?.log_det()?.max(0.0))
}

/// Multiplicative bound: a best `(k_t, k_r)` selection retains at least
/// `(k_t * k_r) / (n_t * n_r)` of full capacity.
pub fn theorem1_bound(
    channel: &MimoChannel,
    power: f64,
    k_t: usize,
    k_r: usize,
    achieved_bits: f64,
) -> Result<BoundReport> {
    validate_k(channel, k_t, k_r)?;
    let full = full_capacity_bits(channel, power)?;
    let fraction = (k_t * k_r) as f64 / (channel.n_t() * channel.n_r()) as f64;
    let bound_bits = fraction * full;
    let slack_bits = achieved_bits - bound_bits;
    Ok(BoundReport {
        theorem: Theorem::One,
        full_capacity_bits: full,
        fraction,
        gap_g_bits: 0.0,
        bound_bits,
        achieved_bits,
        slack_bits,
        satisfied: slack_bits >= -SLACK_TOL,
    })
}

/// Additive-gap bound: the selection retains `min(k_t, k_r) / min(n_t, n_r)`
/// of full capacity up to `G = log2(C(n_t, k_t) * C(n_r, k_r))` bits.
pub fn theorem2_bound(
    channel: &MimoChannel,
    power: f64,
    k_t: usize,
    k_r: usize,
    achieved_bits: f64,
) -> Result<BoundReport> {
    validate_k(channel, k_t, k_r)?;
    let full = full_capacity_bits(channel, power)?;
    let fraction = k_t.min(k_r) as f64 / channel.n_t().min(channel.n_r()) as f64;
    let count =
        binomial(channel.n_t() as u64, k_t as u64) * binomial(channel.n_r() as u64, k_r as u64);
    let gap_g_bits = (count as f64).log2();
    let bound_bits = fraction * full - gap_g_bits;
    let slack_bits = achieved_bits - bound_bits;
    Ok(BoundReport {
        theorem: Theorem::Two,
        full_capacity_bits: full,
        fraction,
        gap_g_bits,
        bound_bits,
        achieved_bits,
        slack_bits,
        satisfied: slack_bits >= -SLACK_TOL,
    })
}

/// One entry of a per-step ratio audit of a greedy run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRatioCheck {
    pub side: Side,
    pub removed: usize,
    pub capacity_before_bits: f64,
    pub capacity_after_bits: f64,
    /// `(m_after / m_before) * capacity_before`, the guaranteed floor.
    pub required_bits: f64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioCheckReport {
    pub steps: Vec<StepRatioCheck>,
    pub all_satisfied: bool,
}

/// Audits a greedy run step by step: removing the best single antenna from a
/// side with `m` active antennas keeps at least `(m-1)/m` of the capacity.
pub fn per_step_ratio_check(
    channel: &MimoChannel,
    power: f64,
    k_t: usize,
    k_r: usize,
    order: PruneOrder,
) -> Result<RatioCheckReport> {
    let result = greedy_prune(channel, power, k_t, k_r, order)?;
    let mut before = full_capacity_bits(channel, power)?;
    let mut tx_count = channel.n_t();
    let mut rx_count = channel.n_r();
    let mut steps = Vec::with_capacity(result.trace.len());
    let mut all_satisfied = true;
    for step in &result.trace {
        let m_before = match step.side {
            Side::Tx => tx_count,
            Side::Rx => rx_count,
        };
        let required_bits = (m_before - 1) as f64 / m_before as f64 * before;
        let satisfied = step.capacity_after_bits >= required_bits - SLACK_TOL;
        all_satisfied &= satisfied;
        steps.push(StepRatioCheck {
            side: step.side,
            removed: step.removed,
            capacity_before_bits: before,
            capacity_after_bits: step.capacity_after_bits,
            required_bits,
            satisfied,
        });
        match step.side {
            Side::Tx => tx_count -= 1,
            Side::Rx => rx_count -= 1,
        }
        before = step.capacity_after_bits;
    }
    Ok(RatioCheckReport {
        steps,
        all_satisfied,
    })
}
