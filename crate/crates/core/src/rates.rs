//! Per-realization SINRs, achievable rates, secrecy rates and the relative
//! secrecy cost. All rates are in bits per channel use (binary logarithm).

use alloc::vec::Vec;

use crate::beamforming::{precode, PrecoderScheme, PrecodingMatrix, SelectionResult, SelectionStrategy};
use crate::channel::ChannelRealization;
use crate::numerics::{dot, RngStream};
use crate::{Error, Result};

/// Transmit SNRs `ρ_m = P/σ_m²` and `ρ_e = P/σ_e²`, linear scale.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LinkBudget {
    rho_m: f64,
    rho_e: f64,
}

impl LinkBudget {
    pub fn new(rho_m: f64, rho_e: f64) -> Result<Self> {
        let ok = |r: f64| r.is_finite() && r > 0.0;
        if !ok(rho_m) || !ok(rho_e) {
            return Err(Error::InvalidArgument("link SNRs must be positive and finite"));
        }
        Ok(Self { rho_m, rho_e })
    }

    /// Converts power decibels, `ρ = 10^(dB/10)`.
    pub fn from_db(rho_m_db: f64, rho_e_db: f64) -> Result<Self> {
        Self::new(db_to_linear(rho_m_db), db_to_linear(rho_e_db))
    }

    pub fn rho_m(&self) -> f64 {
        self.rho_m
    }

    pub fn rho_e(&self) -> f64 {
        self.rho_e
    }
}

pub fn db_to_linear(db: f64) -> f64 {
    libm::pow(10.0, db / 10.0)
}

fn check_dims(selection: &SelectionResult, w: &PrecodingMatrix, k: usize) -> Result<()> {
    let m = w.matrix();
    if m.rows() != selection.active_count() {
        return Err(Error::Dimension { expected: selection.active_count(), actual: m.rows() });
    }
    if m.cols() != selection.users() {
        return Err(Error::Dimension { expected: selection.users(), actual: m.cols() });
    }
    if k >= selection.users() {
        return Err(Error::InvalidArgument("user index out of range"));
    }
    Ok(())
}

/// `ρ_m |h̃_kᵀ w_k|² / (1 + ρ_m Σ_{j≠k} |h̃_kᵀ w_j|²)`.
pub fn sinr_legitimate(selection: &SelectionResult, w: &PrecodingMatrix, k: usize, budget: &LinkBudget) -> Result<f64> {
    check_dims(selection, w, k)?;
    let h = selection.h_eff().column(k)?;
    let beams = w.columns();
    let mut signal = 0.0;
    let mut interference = 0.0;
    for (j, wj) in beams.iter().enumerate() {
        let g = dot(h.as_slice(), wj.as_slice()).norm_sqr();
        if j == k {
            signal = g;
        } else {
            interference += g;
        }
    }
    Ok(budget.rho_m * signal / (1.0 + budget.rho_m * interference))
}

/// `ρ_e |h̃_eᵀ w_k|²`, for an eavesdropper that cancels inter-user interference.
pub fn snr_eavesdropper(
    selection: &SelectionResult,
    w: &PrecodingMatrix,
    k: usize,
    budget: &LinkBudget,
) -> Result<f64> {
    check_dims(selection, w, k)?;
    let wk = w.column(k)?;
    Ok(budget.rho_e * dot(selection.h_eve_eff().as_slice(), wk.as_slice()).norm_sqr())
}

/// `log₂(1 + sinr)`.
pub fn rate_main(sinr: f64) -> Result<f64> {
    if sinr.is_nan() || sinr < 0.0 {
        return Err(Error::InvalidArgument("SINR must be nonnegative"));
    }
    Ok(libm::log2(1.0 + sinr))
}

/// `log₂(1 + snr)`; same map as [`rate_main`], named for the eavesdropper link.
pub fn rate_eve(snr: f64) -> Result<f64> {
    rate_main(snr)
}

/// `[R^m - R^e]^+`.
pub fn rate_secrecy(rate_main: f64, rate_eve: f64) -> f64 {
    (rate_main - rate_eve).max(0.0)
}

/// `1 - R^s / R^m`, with a zero-rate link defined to cost nothing.
pub fn relative_secrecy_cost(rate_main: f64, rate_secrecy: f64) -> Result<f64> {
    if rate_secrecy > rate_main {
        return Err(Error::InvariantViolation("secrecy rate exceeds main rate"));
    }
    if rate_secrecy < 0.0 {
        return Err(Error::InvariantViolation("secrecy rate is negative"));
    }
    if rate_main == 0.0 {
        return Ok(0.0);
    }
    Ok((1.0 - rate_secrecy / rate_main).clamp(0.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct UserRates {
    pub sinr_m: f64,
    pub snr_e: f64,
    pub rate_main: f64,
    pub rate_eve: f64,
    pub rate_secrecy: f64,
    pub cost: f64,
    /// Set when `rate_main == 0` and the cost fell back to 0.
    pub zero_rate: bool,
}

impl UserRates {
    pub fn from_snrs(sinr_m: f64, snr_e: f64) -> Result<Self> {
        let rm = rate_main(sinr_m)?;
        let re = rate_eve(snr_e)?;
        let rs = rate_secrecy(rm, re);
        Ok(Self {
            sinr_m,
            snr_e,
            rate_main: rm,
            rate_eve: re,
            rate_secrecy: rs,
            cost: relative_secrecy_cost(rm, rs)?,
            zero_rate: rm == 0.0,
        })
    }
}

/// Rates of every user for one realization.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RateReport {
    pub users: Vec<UserRates>,
    pub active_indices: Vec<usize>,
}

/// Rates for an already reduced channel.
pub fn evaluate_selection(
    selection: &SelectionResult,
    scheme: PrecoderScheme,
    budget: &LinkBudget,
) -> Result<RateReport> {
    let w = precode(selection, scheme)?;
    let k = selection.users();
    // H̃ᵀ W: entry (i, j) is h̃_iᵀ w_j.
    let cross = selection.h_eff().transpose_mul(w.matrix())?;
    let mut users = Vec::with_capacity(k);
    for i in 0..k {
        let mut signal = 0.0;
        let mut interference = 0.0;
        for j in 0..k {
            let g = cross.get(i, j).norm_sqr();
            if i == j {
                signal = g;
            } else {
                interference += g;
            }
        }
        let sinr = budget.rho_m * signal / (1.0 + budget.rho_m * interference);
        let snr_e = snr_eavesdropper(selection, &w, i, budget)?;
        users.push(UserRates::from_snrs(sinr, snr_e)?);
    }
    Ok(RateReport { users, active_indices: selection.active_indices().to_vec() })
}

/// Selection, precoding and rates for one coherence interval.
pub fn evaluate_realization(
    realization: &ChannelRealization,
    strategy: &SelectionStrategy,
    scheme: PrecoderScheme,
    budget: &LinkBudget,
    rng: &mut RngStream,
) -> Result<RateReport> {
    let selection = strategy.apply(realization, rng)?;
    evaluate_selection(&selection, scheme, budget)
}
