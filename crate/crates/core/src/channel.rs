//! Rayleigh block-fading channel draws for `K` users and one eavesdropper.
//!
//! One [`ChannelRealization`] is one coherence interval. Fast fading `G` and
//! `g_e` carry unit-variance `CN(0, 1)` entries; large-scale gains are applied
//! on demand so that `H = G Γ^{1/2}` and `h_e = √β_e g_e`.

use alloc::vec::Vec;

use crate::numerics::{Complex64, ComplexMatrix, ComplexVector, RngStream};
use crate::{Error, Result};

/// Linear-scale path-loss/shadowing gains.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LargeScaleProfile {
    beta_users: Vec<f64>,
    beta_eve: f64,
}

impl LargeScaleProfile {
    pub fn new(beta_users: Vec<f64>, beta_eve: f64) -> Result<Self> {
        if beta_users.is_empty() {
            return Err(Error::InvalidArgument("need at least one user gain"));
        }
        let ok = |b: f64| b.is_finite() && b > 0.0;
        if !beta_users.iter().all(|&b| ok(b)) || !ok(beta_eve) {
            return Err(Error::InvalidArgument("large-scale gains must be positive and finite"));
        }
        Ok(Self { beta_users, beta_eve })
    }

    /// All gains equal to 1 (path loss compensated at the receivers).
    pub fn unit(users: usize) -> Result<Self> {
        Self::new(alloc::vec![1.0; users], 1.0)
    }

    pub fn users(&self) -> usize {
        self.beta_users.len()
    }

    pub fn beta_users(&self) -> &[f64] {
        &self.beta_users
    }

    pub fn beta_eve(&self) -> f64 {
        self.beta_eve
    }
}

/// Receiving terminal selector; users are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Terminal {
    User(usize),
    Eavesdropper,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    g: ComplexMatrix,
    g_eve: ComplexVector,
    profile: LargeScaleProfile,
}

impl ChannelRealization {
    /// Assembles a realization from explicit fast-fading values.
    pub fn from_parts(g: ComplexMatrix, g_eve: ComplexVector, profile: LargeScaleProfile) -> Result<Self> {
        if g.cols() != profile.users() {
            return Err(Error::Dimension { expected: profile.users(), actual: g.cols() });
        }
        if g_eve.len() != g.rows() {
            return Err(Error::Dimension { expected: g.rows(), actual: g_eve.len() });
        }
        Ok(Self { g, g_eve, profile })
    }

    pub fn antennas(&self) -> usize {
        self.g.rows()
    }

    pub fn users(&self) -> usize {
        self.g.cols()
    }

    pub fn profile(&self) -> &LargeScaleProfile {
        &self.profile
    }

    /// Fast-fading matrix `G` (`M × K`).
    pub fn fading(&self) -> &ComplexMatrix {
        &self.g
    }

    /// Eavesdropper fast fading `g_e`.
    pub fn eve_fading(&self) -> &ComplexVector {
        &self.g_eve
    }

    /// `H = G Γ^{1/2}`.
    pub fn legitimate_channel(&self) -> ComplexMatrix {
        let k = self.users();
        let scale: Vec<f64> = self.profile.beta_users.iter().map(|&b| libm::sqrt(b)).collect();
        let data = self.g.as_row_major().iter().enumerate().map(|(i, z)| z * scale[i % k]).collect();
        ComplexMatrix::from_raw_unchecked(self.antennas(), k, data)
    }

    /// `h_e = √β_e g_e`.
    pub fn eve_channel(&self) -> ComplexVector {
        self.g_eve.scaled(libm::sqrt(self.profile.beta_eve))
    }
}

/// Draws `G` row by row and then `g_e`, all i.i.d. `CN(0, 1)`.
pub fn draw_realization(
    antennas: usize,
    users: usize,
    profile: &LargeScaleProfile,
    rng: &mut RngStream,
) -> Result<ChannelRealization> {
    if antennas == 0 || users == 0 {
        return Err(Error::InvalidArgument("need M >= 1 and K >= 1"));
    }
    if profile.users() != users {
        return Err(Error::Dimension { expected: users, actual: profile.users() });
    }
    let mut g: Vec<Complex64> = Vec::new();
    rng.fill_complex_standard_normal(&mut g, antennas * users);
    let mut g_eve: Vec<Complex64> = Vec::new();
    rng.fill_complex_standard_normal(&mut g_eve, antennas);
    Ok(ChannelRealization {
        g: ComplexMatrix::from_raw_unchecked(antennas, users, g),
        g_eve: ComplexVector::from_vec_unchecked(g_eve),
        profile: profile.clone(),
    })
}

/// `h_k = √β_k g_k` for a user, or `h_e` for the eavesdropper.
pub fn effective_channel(realization: &ChannelRealization, terminal: Terminal) -> Result<ComplexVector> {
    match terminal {
        Terminal::User(k) => {
            if k >= realization.users() {
                return Err(Error::InvalidArgument("user index out of range"));
            }
            let beta = realization.profile.beta_users[k];
            Ok(realization.g.column(k)?.scaled(libm::sqrt(beta)))
        }
        Terminal::Eavesdropper => Ok(realization.eve_channel()),
    }
}
