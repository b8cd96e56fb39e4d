//! Math substrate: complex linear algebra, seeded sampling, special functions
//! and goodness-of-fit statistics.

mod complex;
mod ks;
mod rng;
mod special;

pub use complex::{inner_product_t, ComplexMatrix, ComplexVector};
pub use ks::{ks_critical_value_1pct, ks_statistic, EmpiricalSample};
pub use num_complex::Complex64;
pub use rng::{sample_complex_standard_normal, RngStream};
pub use special::{beta_1_cdf, erlang_cdf, normal_cdf, standard_normal_cdf};

pub(crate) use complex::{dot, dot_conj};

/// Half-width of the two-sided 95% normal-approximation confidence interval.
pub const Z_95: f64 = 1.959_963_984_540_054;

/// Mean, unbiased variance and 95% CI half-width of `values`.
///
/// With fewer than two values the variance and half-width are reported as 0.
pub fn summarize(values: &[f64]) -> (f64, f64, f64) {
    let n = values.len();
    if n == 0 {
        return (0.0, 0.0, 0.0);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, 0.0, 0.0);
    }
    let var = values.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64;
    (mean, var, Z_95 * libm::sqrt(var / n as f64))
}
