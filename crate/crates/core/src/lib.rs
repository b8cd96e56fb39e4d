//! Numerics for multiuser massive-MIMO wiretap channels.
//!
//! The crate covers one coherence interval end to end: Rayleigh block-fading
//! draws for `K` legitimate users and a single passive eavesdropper, transmit
//! antenna selection, linear precoding (MRT, ZF), achievable and secrecy rates,
//! and the relative secrecy cost `C = 1 - R^s / R^m`. The [`asymptotics`]
//! module carries the large-`M` predictors and the goodness-of-fit validators
//! used to check them against Monte Carlo samples.
//!
//! Everything here is `no_std` + `alloc`. Sweeps, file formats and the CLI live
//! in the `secrecy-sim` companion crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod asymptotics;
pub mod beamforming;
pub mod channel;
pub mod error;
pub mod numerics;
pub mod rates;

pub use error::{Error, Result};
