use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use secrecy_core::channel::draw_realization;
use secrecy_core::numerics::RngStream;
use secrecy_core::rates::evaluate_realization;
use secrecy_sim::csv_out::{emit_csv, write_csv};
use secrecy_sim::validation::run_validation_with_threads;
use secrecy_sim::{run_sweep, run_validation, Aggregation, ExperimentConfig, Preset, SimError, SimResult, SweepResult};

const EXIT_GATING_FAILED: u8 = 3;

/// Monte Carlo simulator for massive-MIMO wiretap channels.
#[derive(Parser)]
#[command(name = "mimo-secrecy", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment config and write the sweep CSV.
    Sweep {
        #[command(flatten)]
        run: RunArgs,
        /// Flat JSON experiment config; flags override its values.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Run one of the figure presets (fig1 or fig2) and write the sweep CSV.
    Preset {
        name: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Check the strongest-L selection laws and write a JSON report.
    Validate {
        /// Total BS antennas M.
        #[arg(long, default_value_t = 4096)]
        antennas: usize,
        /// Selected antennas L.
        #[arg(long, default_value_t = 4)]
        active: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = secrecy_sim::config::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Evaluate a single realization and print its rate report.
    Single {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Antenna count; defaults to the first entry of M_values.
        #[arg(long)]
        antennas: Option<usize>,
        /// Trial index, i.e. the RNG stream id.
        #[arg(long, default_value_t = 0)]
        trial: u64,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    /// Output CSV path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads. Affects speed only, never results.
    #[arg(long)]
    threads: Option<usize>,
    /// ratio-of-means or mean-of-ratios.
    #[arg(long)]
    aggregation: Option<String>,
}

impl RunArgs {
    fn apply(&self, cfg: &mut ExperimentConfig) -> SimResult<()> {
        if let Some(seed) = self.seed {
            cfg.master_seed = seed;
        }
        if let Some(trials) = self.trials {
            cfg.trials = trials;
        }
        if let Some(agg) = &self.aggregation {
            cfg.aggregation = agg.parse::<Aggregation>()?;
        }
        cfg.validate()
    }
}

fn with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> SimResult<T> + Send) -> SimResult<T> {
    match threads {
        None => f(),
        Some(0) => Err(SimError::config("--threads must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| SimError::config(format!("cannot build thread pool: {e}")))?
            .install(f),
    }
}

fn write_sweep(result: &SweepResult, out: Option<&Path>) -> SimResult<()> {
    match out {
        Some(path) => emit_csv(result, path),
        None => write_csv(result, std::io::stdout().lock(), Path::new("<stdout>")),
    }
}

fn write_text(text: &str, out: Option<&Path>) -> SimResult<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| SimError::Io { path: path.to_owned(), source }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|source| SimError::Io { path: "<stdout>".into(), source })
        }
    }
}

fn load_config(path: Option<&Path>) -> SimResult<ExperimentConfig> {
    match path {
        Some(p) => ExperimentConfig::load(p),
        None => Ok(ExperimentConfig::default()),
    }
}

fn run(cli: Cli) -> SimResult<u8> {
    match cli.command {
        Command::Sweep { run, config } => {
            let mut cfg = load_config(config.as_deref())?;
            run.apply(&mut cfg)?;
            let result = with_pool(run.threads, || run_sweep(&cfg))?;
            write_sweep(&result, run.out.as_deref())?;
        }
        Command::Preset { name, run } => {
            let preset: Preset = name.parse()?;
            let mut configs = preset.configs();
            for cfg in &mut configs {
                run.apply(cfg)?;
            }
            let result = with_pool(run.threads, || {
                let mut all = SweepResult::default();
                for cfg in &configs {
                    all.extend(run_sweep(cfg)?);
                }
                Ok(all)
            })?;
            write_sweep(&result, run.out.as_deref())?;
        }
        Command::Validate { antennas, active, trials, seed, out, threads } => {
            let report = match threads {
                Some(n) => run_validation_with_threads(antennas, active, trials, seed, n)?,
                None => run_validation(antennas, active, trials, seed)?,
            };
            let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
            text.push('\n');
            write_text(&text, out.as_deref())?;
            if !report.all_gating_passed {
                for c in report.checks.iter().filter(|c| c.gating && !c.passed) {
                    eprintln!("gating check failed: {} ({} > {})", c.name, c.statistic, c.threshold);
                }
                return Ok(EXIT_GATING_FAILED);
            }
        }
        Command::Single { config, seed, antennas, trial } => {
            let mut cfg = load_config(config.as_deref())?;
            if let Some(seed) = seed {
                cfg.master_seed = seed;
            }
            if let Some(m) = antennas {
                cfg.m_values = vec![m];
            }
            cfg.validate()?;
            let m = cfg.m_values[0];
            let mut rng = RngStream::new(cfg.master_seed, trial);
            let r = draw_realization(m, cfg.users, &cfg.profile()?, &mut rng)?;
            let report = evaluate_realization(&r, &cfg.strategy(), cfg.precoder, &cfg.budget()?, &mut rng)?;
            let mut text = format!(
                "M = {m}, L = {}, K = {}, seed = {}, trial = {trial}\n",
                report.active_indices.len(),
                cfg.users,
                cfg.master_seed
            );
            text.push_str("user  SINR_m        SNR_e         R_m [bit]  R_e [bit]  R_s [bit]  cost\n");
            for (k, u) in report.users.iter().enumerate() {
                text.push_str(&format!(
                    "{:<5} {:<13.6e} {:<13.6e} {:<10.6} {:<10.6} {:<10.6} {:.6}{}\n",
                    k + 1,
                    u.sinr_m,
                    u.snr_e,
                    u.rate_main,
                    u.rate_eve,
                    u.rate_secrecy,
                    u.cost,
                    if u.zero_rate { "  (zero main rate)" } else { "" }
                ));
            }
            write_text(&text, None)?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
