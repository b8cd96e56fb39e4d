//! One-sample Kolmogorov–Smirnov statistic.

use alloc::vec::Vec;

use crate::{Error, Result};

/// A non-empty sample of finite reals.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EmpiricalSample(Vec<f64>);

impl EmpiricalSample {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("sample must be non-empty"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("sample values must be finite"));
        }
        Ok(Self(values))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn sorted(&self) -> Vec<f64> {
        let mut v = self.0.clone();
        v.sort_unstable_by(f64::total_cmp);
        v
    }

    pub fn mean(&self) -> f64 {
        self.0.iter().sum::<f64>() / self.0.len() as f64
    }

    /// Unbiased sample variance; zero for a single value.
    pub fn variance(&self) -> f64 {
        let n = self.0.len();
        if n < 2 {
            return 0.0;
        }
        let m = self.mean();
        self.0.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1) as f64
    }
}

/// `D = max_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n)` over the sorted sample.
pub fn ks_statistic(sample: &EmpiricalSample, cdf: impl Fn(f64) -> f64) -> Result<f64> {
    if sample.is_empty() {
        return Err(Error::InvalidArgument("KS statistic needs a non-empty sample"));
    }
    let xs = sample.sorted();
    let n = xs.len() as f64;
    Ok(xs.iter().enumerate().fold(0.0_f64, |acc, (i, &x)| {
        let f = cdf(x);
        let above = (i as f64 + 1.0) / n - f;
        let below = f - i as f64 / n;
        acc.max(above).max(below)
    }))
}

/// Asymptotic 1% critical value `1.63 / √n`.
pub fn ks_critical_value_1pct(n: usize) -> f64 {
    1.63 / libm::sqrt(n as f64)
}
