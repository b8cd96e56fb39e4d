//! Large-`M` predictors and distribution validators.
//!
//! Under strongest-`L` selection with `K = 1` and MRT, the legitimate SINR is
//! `ρ_m β_1 Ξ` where `Ξ` is the trimmed sum of the `L` largest of `M` unit
//! exponentials. `Ξ` is asymptotically normal with mean `L(1 + ln(M/L))` and
//! variance `L(2 - L/M)`, so the main rate grows like `log log M`. The
//! eavesdropper instead sees `SNR^e = ρ_e β_e ‖g̃_e‖² cos²θ` with
//! `‖g̃_e‖² ~ Gamma(L, 1)` and `cos²θ ~ Beta(1, L-1)` independent, giving mean
//! `ρ_e β_e` and variance `(ρ_e β_e)²` regardless of `M`.
//!
//! The validators here turn those claims into KS, moment and correlation checks
//! on Monte Carlo samples.

use alloc::format;
use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use crate::numerics::{
    beta_1_cdf, dot_conj, erlang_cdf, ks_critical_value_1pct, ks_statistic, normal_cdf, ComplexVector, EmpiricalSample,
};
use crate::{Error, Result};

/// `ψ = 1 / log₂ e = ln 2`, so that `ψ log₂ x = ln x`.
pub const PSI: f64 = 1.0 / core::f64::consts::LOG2_E;

/// Smallest sample accepted by the validators; below it the asymptotic KS
/// critical value is not trustworthy.
pub const MIN_VALIDATION_SAMPLES: usize = 100;

/// Gaussian limit of the trimmed sum `Ξ`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TrimmedSumLaw {
    pub antennas: usize,
    pub active: usize,
    pub mean: f64,
    pub variance: f64,
    pub psi: f64,
}

impl TrimmedSumLaw {
    pub fn cdf(&self, x: f64) -> f64 {
        normal_cdf(x, self.mean, self.variance)
    }
}

fn check_counts(antennas: usize, active: usize) -> Result<()> {
    if active == 0 || active > antennas {
        return Err(Error::InvalidArgument("need 1 <= L <= M"));
    }
    Ok(())
}

/// Mean `L(1 + ψ log₂(M/L))`, variance `L(2 - L/M)`.
pub fn trimmed_sum_law(antennas: usize, active: usize) -> Result<TrimmedSumLaw> {
    check_counts(antennas, active)?;
    let (m, l) = (antennas as f64, active as f64);
    Ok(TrimmedSumLaw {
        antennas,
        active,
        mean: l * (1.0 + PSI * libm::log2(m / l)),
        variance: l * (2.0 - l / m),
        psi: PSI,
    })
}

// false for NaN
fn positive(x: f64) -> bool {
    x > 0.0
}

/// `log₂(1 + ρ_m β_k M)`: full-complexity main rate.
pub fn predict_rate_full(antennas: usize, rho_m: f64, beta: f64) -> Result<f64> {
    if antennas == 0 || !positive(rho_m) || !positive(beta) {
        return Err(Error::InvalidArgument("M, rho_m and beta must be positive"));
    }
    Ok(libm::log2(1.0 + rho_m * beta * antennas as f64))
}

/// `log₂(1 + ψ ρ_m β_1 L log₂ M)`: fixed-`L` selection main rate.
pub fn predict_rate_selection(antennas: usize, active: usize, rho_m: f64, beta: f64) -> Result<f64> {
    check_counts(antennas, active)?;
    if !positive(rho_m) || !positive(beta) {
        return Err(Error::InvalidArgument("rho_m and beta must be positive"));
    }
    Ok(libm::log2(1.0 + PSI * rho_m * beta * active as f64 * libm::log2(antennas as f64)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Regime {
    Full,
    Selection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum GrowthOrder {
    LogM,
    LogLogM,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AsymptoticPrediction {
    pub regime: Regime,
    pub predicted_rate: f64,
    pub growth_order: GrowthOrder,
}

impl AsymptoticPrediction {
    pub fn full(antennas: usize, rho_m: f64, beta: f64) -> Result<Self> {
        Ok(Self {
            regime: Regime::Full,
            predicted_rate: predict_rate_full(antennas, rho_m, beta)?,
            growth_order: GrowthOrder::LogM,
        })
    }

    pub fn selection(antennas: usize, active: usize, rho_m: f64, beta: f64) -> Result<Self> {
        Ok(Self {
            regime: Regime::Selection,
            predicted_rate: predict_rate_selection(antennas, active, rho_m, beta)?,
            growth_order: GrowthOrder::LogLogM,
        })
    }
}

/// `(E SNR^e, Var SNR^e) = (ρ_e β_e, ρ_e² β_e²)`; independent of `M` and `L`.
pub fn eve_snr_moments(rho_e: f64, beta_e: f64) -> (f64, f64) {
    let mean = rho_e * beta_e;
    (mean, mean * mean)
}

/// Squared cosine of the Hermitian angle, `|aᵀ b*|² / (‖a‖² ‖b‖²)`.
pub fn hermitian_angle_cos2(a: &ComplexVector, b: &ComplexVector) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::Dimension { expected: a.len(), actual: b.len() });
    }
    let (na, nb) = (a.norm_sqr(), b.norm_sqr());
    if na == 0.0 || nb == 0.0 {
        return Err(Error::InvalidArgument("Hermitian angle undefined for a zero vector"));
    }
    let ip = dot_conj(a.as_slice(), b.as_slice()).norm_sqr();
    Ok((ip / (na * nb)).clamp(0.0, 1.0))
}

/// Closed-form reference laws for [`validate_distribution`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Law {
    /// Gaussian trimmed-sum limit; exact `Gamma(L, 1)` when `M = L`.
    TrimmedSum { antennas: usize, active: usize },
    /// `Beta(1, L-1)`, the squared Hermitian cosine.
    BetaCos2 { active: usize },
    /// `Gamma(L, 1)`, the norm `‖g̃_e‖²`.
    ErlangNorm { active: usize },
}

impl Law {
    pub fn cdf(&self, x: f64) -> Result<f64> {
        match *self {
            Law::TrimmedSum { antennas, active } if antennas == active => erlang_cdf(x.max(0.0), active),
            Law::TrimmedSum { antennas, active } => Ok(trimmed_sum_law(antennas, active)?.cdf(x)),
            Law::BetaCos2 { active } => beta_1_cdf(x, active),
            Law::ErlangNorm { active } => erlang_cdf(x.max(0.0), active),
        }
    }

    fn check(&self) -> Result<()> {
        match *self {
            Law::TrimmedSum { antennas, active } => check_counts(antennas, active),
            Law::BetaCos2 { active } if active < 2 => {
                Err(Error::Degenerate("cos² law needs L >= 2; for L = 1 use erlang_norm(1)"))
            }
            Law::BetaCos2 { .. } => Ok(()),
            Law::ErlangNorm { active: 0 } => Err(Error::InvalidArgument("Erlang shape must be at least 1")),
            Law::ErlangNorm { .. } => Ok(()),
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Law::TrimmedSum { antennas, active } => write!(f, "trimmed_sum({antennas},{active})"),
            Law::BetaCos2 { active } => write!(f, "beta_cos2({active})"),
            Law::ErlangNorm { active } => write!(f, "erlang_norm({active})"),
        }
    }
}

impl FromStr for Law {
    type Err = Error;

    /// Parses the tags `trimmed_sum(M,L)`, `beta_cos2(L)` and `erlang_norm(L)`.
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownLaw(String::from(s));
        let s_trim = s.trim();
        let open = s_trim.find('(').ok_or_else(unknown)?;
        let args = s_trim[open + 1..].strip_suffix(')').ok_or_else(unknown)?;
        let mut nums = args.split(',').map(|a| a.trim().parse::<usize>());
        let mut next = || nums.next().and_then(|r| r.ok()).ok_or_else(unknown);
        let law = match &s_trim[..open] {
            "trimmed_sum" => Law::TrimmedSum { antennas: next()?, active: next()? },
            "beta_cos2" => Law::BetaCos2 { active: next()? },
            "erlang_norm" => Law::ErlangNorm { active: next()? },
            _ => return Err(unknown()),
        };
        if nums.next().is_some() {
            return Err(unknown());
        }
        Ok(law)
    }
}

/// Outcome of one KS check.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ValidationRecord {
    pub law: String,
    pub n: usize,
    pub ks_statistic: f64,
    pub critical_value: f64,
    pub passed: bool,
}

/// KS test of `sample` against `law` at the 1% level (`D < 1.63/√n`).
pub fn validate_distribution(sample: &EmpiricalSample, law: Law) -> Result<ValidationRecord> {
    if sample.len() < MIN_VALIDATION_SAMPLES {
        return Err(Error::InvalidArgument("validation needs at least 100 samples"));
    }
    law.check()?;
    // CDFs above never fail once `law.check()` passed and x is finite.
    let d = ks_statistic(sample, |x| law.cdf(x).unwrap_or(f64::NAN))?;
    if d.is_nan() {
        return Err(Error::InvalidArgument("reference CDF undefined on sample"));
    }
    let critical_value = ks_critical_value_1pct(sample.len());
    Ok(ValidationRecord {
        law: format!("{law}"),
        n: sample.len(),
        ks_statistic: d,
        critical_value,
        passed: d < critical_value,
    })
}

/// `|r|` below this is consistent with independence for `n` paired draws.
pub fn independence_threshold(n: usize) -> f64 {
    3.0 / libm::sqrt(n as f64)
}

/// Pearson correlation of paired samples.
pub fn independence_check(x: &EmpiricalSample, y: &EmpiricalSample) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::Dimension { expected: x.len(), actual: y.len() });
    }
    if x.len() < MIN_VALIDATION_SAMPLES {
        return Err(Error::InvalidArgument("independence check needs at least 100 pairs"));
    }
    let (mx, my) = (x.mean(), y.mean());
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.values().iter().zip(y.values()) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::UndefinedCorrelation);
    }
    Ok((sxy / libm::sqrt(sxx * syy)).clamp(-1.0, 1.0))
}
