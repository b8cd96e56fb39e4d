//! Closed-form CDFs used to validate the selection laws.

use core::f64::consts::FRAC_1_SQRT_2;

use crate::{Error, Result};

/// Standard normal CDF.
///
/// Evaluated as `erfc(-x/√2) / 2` with the piecewise rational erfc from
/// `libm` (FreeBSD msun). Absolute error is far below `1e-7` and the lower
/// tail keeps full relative precision, so `Φ(-8) ≈ 6.2e-16`.
pub fn standard_normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x * FRAC_1_SQRT_2)
}

/// CDF of a normal with the given mean and variance.
pub fn normal_cdf(x: f64, mean: f64, variance: f64) -> f64 {
    standard_normal_cdf((x - mean) / libm::sqrt(variance))
}

/// CDF of `Beta(1, L - 1)`: `1 - (1 - x)^(L - 1)`.
///
/// Inputs outside `[0, 1]` are clamped to the support.
pub fn beta_1_cdf(x: f64, l: usize) -> Result<f64> {
    if l < 2 {
        return Err(Error::Degenerate("Beta(1, L-1) needs L >= 2"));
    }
    if x.is_nan() {
        return Err(Error::InvalidArgument("x must not be NaN"));
    }
    if x <= 0.0 {
        return Ok(0.0);
    }
    if x >= 1.0 {
        return Ok(1.0);
    }
    Ok(1.0 - libm::pow(1.0 - x, (l - 1) as f64))
}

/// CDF of `Gamma(L, 1)`, the sum of `L` unit exponentials (half a chi-square
/// with `2L` degrees of freedom): `1 - e^{-x} Σ_{i<L} x^i / i!`.
///
/// Terms are accumulated in log space so large `L` and `x` do not overflow.
pub fn erlang_cdf(x: f64, l: usize) -> Result<f64> {
    if l == 0 {
        return Err(Error::InvalidArgument("Erlang shape must be at least 1"));
    }
    if x.is_nan() || x < 0.0 {
        return Err(Error::InvalidArgument("Erlang CDF needs x >= 0"));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(1.0);
    }
    let lf = l as f64;
    let ln_x = libm::log(x);
    if x < lf + 1.0 {
        // P(L, x) = e^{-x} x^L / L! · Σ_{n≥0} x^n / ((L+1)…(L+n))
        let ln_lead = -x + lf * ln_x - libm::lgamma(lf + 1.0);
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut n = 1.0;
        while term > sum * 1e-17 {
            term *= x / (lf + n);
            sum += term;
            n += 1.0;
        }
        Ok((libm::exp(ln_lead) * sum).min(1.0))
    } else {
        // Q(L, x) = Σ_{i<L} e^{-x} x^i / i!
        let mut ln_term = -x;
        let mut upper = libm::exp(ln_term);
        for i in 1..l {
            ln_term += ln_x - libm::log(i as f64);
            upper += libm::exp(ln_term);
        }
        Ok((1.0 - upper).clamp(0.0, 1.0))
    }
}
