//! MIMO channel matrices, capacity, and deterministic generators.
//!
//! A channel is an `n_r x n_t` complex matrix `H`: row `i` collects the gains
//! from every transmit antenna into receive antenna `i`. Capacity under equal
//! power allocation is `log2 det(I + P H H^H)` in bits.

use num_complex::Complex64;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::matrix::{gram, ComplexMatrix};
use crate::subset::SubsetIndex;
use crate::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct MimoChannel {
    h: ComplexMatrix,
}

/// Capacity of a channel at a given power, together with the Gram spectrum
/// the value was computed from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapacityReport {
    pub capacity_bits: f64,
    pub power: f64,
    pub n_t: usize,
    pub n_r: usize,
    /// Eigenvalues of `I + P H H^H`, nonincreasing.
    pub spectrum: Vec<f64>,
}

impl MimoChannel {
    pub fn new(h: ComplexMatrix) -> Self {
        MimoChannel { h }
    }

    /// Number of transmit antennas (columns of `H`).
    pub fn n_t(&self) -> usize {
        self.h.cols()
    }

    /// Number of receive antennas (rows of `H`).
    pub fn n_r(&self) -> usize {
        self.h.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.h
    }

    /// Capacity in bits at transmit power `P` per antenna.
    ///
    /// An all-zero channel has capacity exactly 0; a tiny negative rounding
    /// residue from the eigensolver is clamped away so the result is never
    /// below zero.
    pub fn capacity(&self, power: f64) -> Result<CapacityReport> {
        let f = gram(&self.h, power)?;
        let spectrum = f.eigenvalues()?.to_vec();
        let capacity_bits = f.log_det()?.max(0.0);
        Ok(CapacityReport {
            capacity_bits,
            power,
            n_t: self.n_t(),
            n_r: self.n_r(),
            spectrum,
        })
    }

    /// The subchannel restricted to transmit antennas `tx` and receive
    /// antennas `rx` (both 1-based).
    pub fn subchannel(&self, tx: &SubsetIndex, rx: &SubsetIndex) -> Result<MimoChannel> {
        if tx.is_empty() || rx.is_empty() {
            return Err(Error::invalid(
                "subchannel requires nonempty antenna subsets",
            ));
        }
        if let Some(max) = tx.max() {
            if max > self.n_t() {
                return Err(Error::invalid(format!(
                    "transmit index {max} exceeds n_t = {}",
                    self.n_t()
                )));
            }
        }
        if let Some(max) = rx.max() {
            if max > self.n_r() {
                return Err(Error::invalid(format!(
                    "receive index {max} exceeds n_r = {}",
                    self.n_r()
                )));
            }
        }
        let mut entries = Vec::with_capacity(tx.len() * rx.len());
        for &i in rx.members() {
            for &j in tx.members() {
                entries.push(self.h.get(i - 1, j - 1));
            }
        }
        let h = ComplexMatrix::from_entries(rx.len(), tx.len(), entries)?;
        Ok(MimoChannel { h })
    }
}

/// Channel with every gain equal to 1.
pub fn gen_all_ones(n_t: usize, n_r: usize) -> Result<MimoChannel> {
    let h = ComplexMatrix::from_entries(n_r, n_t, vec![Complex64::ONE; n_r * n_t])?;
    Ok(MimoChannel::new(h))
}

/// `n` parallel unit subchannels: `H = I`. Any gain scaling belongs in the
/// power argument of `capacity`.
pub fn gen_parallel(n: usize) -> Result<MimoChannel> {
    Ok(MimoChannel::new(ComplexMatrix::identity(n)?))
}

/// Deterministic i.i.d. circularly symmetric complex Gaussian channel:
/// every entry is `CN(0, 1)`, i.e. real and imaginary parts are independent
/// `N(0, 1/2)`. The same seed always yields the same matrix.
pub fn gen_gaussian(n_t: usize, n_r: usize, seed: u64) -> Result<MimoChannel> {
    if n_t == 0 || n_r == 0 {
        return Err(Error::invalid(format!(
            "channel dimensions must be at least 1, got n_t={n_t}, n_r={n_r}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let mut entries = Vec::with_capacity(n_r * n_t);
    for _ in 0..n_r * n_t {
        let (re, im) = standard_normal_pair(&mut rng);
        entries.push(Complex64::new(re * scale, im * scale));
    }
    let h = ComplexMatrix::from_entries(n_r, n_t, entries)?;
    Ok(MimoChannel::new(h))
}

/// One Box-Muller draw: two independent standard normals from two uniform
/// 53-bit samples. The first uniform lands in (0, 1] so the logarithm is
/// always finite.
fn standard_normal_pair(rng: &mut ChaCha8Rng) -> (f64, f64) {
    const TWO_53: f64 = 9007199254740992.0;
    let u1 = ((rng.next_u64() >> 11) + 1) as f64 / TWO_53;
    let u2 = (rng.next_u64() >> 11) as f64 / TWO_53;
    let r = (-2.0 * u1.ln()).sqrt();
    let theta = std::f64::consts::TAU * u2;
    (r * theta.cos(), r * theta.sin())
}
