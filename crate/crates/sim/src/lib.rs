//! Monte Carlo orchestration on top of `secrecy-core`.
//!
//! [`config`] holds the flat JSON experiment description and the figure
//! presets, [`sweep`] runs trials in parallel and reduces them in a fixed
//! order, [`csv_out`] writes and reads the sweep CSV, and [`validation`]
//! produces the JSON report that checks the selection laws.

pub mod config;
pub mod csv_out;
pub mod error;
pub mod sweep;
pub mod validation;

pub use config::{ActiveSpec, Aggregation, ExperimentConfig, Preset, SelectionKind};
pub use error::{SimError, SimResult};
pub use sweep::{run_sweep, run_sweep_with_threads, SweepPoint, SweepResult};
pub use validation::{run_validation, ValidationReport};
