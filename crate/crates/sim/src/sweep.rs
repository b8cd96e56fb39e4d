//! Parallel Monte Carlo sweeps with an order-fixed reduction.
//!
//! Trial `t` reads RNG stream `t` under the config's master seed at every
//! sweep point. Trials may run on any number of threads; their outcomes are
//! collected in trial order and reduced sequentially, so a sweep is
//! bit-identical for any thread count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use secrecy_core::channel::draw_realization;
use secrecy_core::numerics::{summarize, RngStream};
use secrecy_core::rates::{evaluate_realization, RateReport};

use crate::config::{Aggregation, ExperimentConfig};
use crate::error::{SimError, SimResult};

/// Per-user ergodic rates at one sweep point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UserMeans {
    pub rate_main: f64,
    pub rate_secrecy: f64,
    pub rate_eve: f64,
    pub cost_ratio_of_means: f64,
    pub cost_mean_of_ratios: f64,
}

/// Aggregated statistics at one `(M, L)` point.
///
/// Rate means are over trials of the per-trial user average; the CI
/// half-widths are 95% normal-approximation intervals of those means.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    #[serde(rename = "M")]
    pub antennas: usize,
    #[serde(rename = "L")]
    pub active: usize,
    #[serde(rename = "K")]
    pub users: usize,
    pub mean_rate_main: f64,
    pub mean_rate_secrecy: f64,
    pub mean_rate_eve: f64,
    /// Cost under the configured aggregation.
    pub cost: f64,
    pub cost_ratio_of_means: f64,
    pub cost_mean_of_ratios: f64,
    pub ci_main: f64,
    pub ci_secrecy: f64,
    pub ci_eve: f64,
    pub trials: usize,
    /// User-trials whose main rate was exactly zero (cost defined as 0).
    pub zero_rate_events: usize,
    pub per_user: Vec<UserMeans>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub points: Vec<SweepPoint>,
}

impl SweepResult {
    pub fn extend(&mut self, other: SweepResult) {
        self.points.extend(other.points);
    }

    pub fn point(&self, antennas: usize, active: usize) -> Option<&SweepPoint> {
        self.points.iter().find(|p| p.antennas == antennas && p.active == active)
    }
}

/// Runs the sweep on the current rayon pool.
pub fn run_sweep(config: &ExperimentConfig) -> SimResult<SweepResult> {
    config.validate()?;
    let profile = config.profile()?;
    let budget = config.budget()?;
    let strategy = config.strategy();

    let mut result = SweepResult::default();
    for &m in &config.m_values {
        let reports: Vec<RateReport> = (0..config.trials as u64)
            .into_par_iter()
            .map(|t| {
                let mut rng = RngStream::new(config.master_seed, t);
                let r = draw_realization(m, config.users, &profile, &mut rng)?;
                evaluate_realization(&r, &strategy, config.precoder, &budget, &mut rng)
            })
            .collect::<Result<_, _>>()?;
        result.points.push(aggregate(config, m, &reports));
    }
    Ok(result)
}

/// Runs the sweep on a dedicated pool of `threads` workers.
pub fn run_sweep_with_threads(config: &ExperimentConfig, threads: usize) -> SimResult<SweepResult> {
    with_threads(threads, || run_sweep(config))
}

pub(crate) fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> SimResult<T> + Send) -> SimResult<T> {
    if threads == 0 {
        return Err(SimError::config("--threads must be at least 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| SimError::config(format!("cannot build thread pool: {e}")))?;
    pool.install(f)
}

fn aggregate(config: &ExperimentConfig, m: usize, reports: &[RateReport]) -> SweepPoint {
    let k = config.users;
    let n = reports.len();
    let user_mean =
        |r: &RateReport, f: fn(&secrecy_core::rates::UserRates) -> f64| r.users.iter().map(f).sum::<f64>() / k as f64;
    let main: Vec<f64> = reports.iter().map(|r| user_mean(r, |u| u.rate_main)).collect();
    let secrecy: Vec<f64> = reports.iter().map(|r| user_mean(r, |u| u.rate_secrecy)).collect();
    let eve: Vec<f64> = reports.iter().map(|r| user_mean(r, |u| u.rate_eve)).collect();
    let (mean_main, _, ci_main) = summarize(&main);
    let (mean_secrecy, _, ci_secrecy) = summarize(&secrecy);
    let (mean_eve, _, ci_eve) = summarize(&eve);

    let per_user: Vec<UserMeans> = (0..k)
        .map(|u| {
            let col = |f: fn(&secrecy_core::rates::UserRates) -> f64| {
                reports.iter().map(|r| f(&r.users[u])).sum::<f64>() / n as f64
            };
            let rm = col(|x| x.rate_main);
            let rs = col(|x| x.rate_secrecy);
            UserMeans {
                rate_main: rm,
                rate_secrecy: rs,
                rate_eve: col(|x| x.rate_eve),
                cost_ratio_of_means: if rm == 0.0 { 0.0 } else { (1.0 - rs / rm).clamp(0.0, 1.0) },
                cost_mean_of_ratios: col(|x| x.cost),
            }
        })
        .collect();
    let cost_rom = per_user.iter().map(|u| u.cost_ratio_of_means).sum::<f64>() / k as f64;
    let cost_mor = per_user.iter().map(|u| u.cost_mean_of_ratios).sum::<f64>() / k as f64;

    SweepPoint {
        antennas: m,
        active: config.active_at(m),
        users: k,
        mean_rate_main: mean_main,
        mean_rate_secrecy: mean_secrecy,
        mean_rate_eve: mean_eve,
        cost: match config.aggregation {
            Aggregation::RatioOfMeans => cost_rom,
            Aggregation::MeanOfRatios => cost_mor,
        },
        cost_ratio_of_means: cost_rom,
        cost_mean_of_ratios: cost_mor,
        ci_main,
        ci_secrecy,
        ci_eve,
        trials: n,
        zero_rate_events: reports.iter().flat_map(|r| &r.users).filter(|u| u.zero_rate).count(),
        per_user,
    }
}
