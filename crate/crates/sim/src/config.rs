//! Experiment description, its JSON form, and the figure presets.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use secrecy_core::beamforming::{PrecoderScheme, SelectionCriterion, SelectionStrategy};
use secrecy_core::channel::LargeScaleProfile;
use secrecy_core::rates::LinkBudget;

use crate::error::{SimError, SimResult};

/// Number of active antennas: a fixed count, or every antenna.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActiveSpec {
    Count(usize),
    Full,
}

impl Serialize for ActiveSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ActiveSpec::Count(n) => s.serialize_u64(*n as u64),
            ActiveSpec::Full => s.serialize_str("full"),
        }
    }
}

impl<'de> Deserialize<'de> for ActiveSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Count(usize),
            Word(String),
        }
        match Raw::deserialize(d)? {
            Raw::Count(n) => Ok(ActiveSpec::Count(n)),
            Raw::Word(w) if w == "full" => Ok(ActiveSpec::Full),
            Raw::Word(w) => Err(serde::de::Error::custom(format!("L must be a count or \"full\", got {w:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SelectionKind {
    Strongest,
    Random,
    #[default]
    Full,
}

/// How the relative secrecy cost of a sweep point is aggregated over trials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Aggregation {
    /// `1 - E[R^s] / E[R^m]`, per user, then averaged over users.
    #[default]
    RatioOfMeans,
    /// `E[1 - R^s / R^m]` over trials and users.
    MeanOfRatios,
}

impl FromStr for Aggregation {
    type Err = SimError;

    fn from_str(s: &str) -> SimResult<Self> {
        match s {
            "ratio-of-means" => Ok(Aggregation::RatioOfMeans),
            "mean-of-ratios" => Ok(Aggregation::MeanOfRatios),
            other => Err(SimError::config(format!(
                "unknown aggregation {other:?} (expected ratio-of-means or mean-of-ratios)"
            ))),
        }
    }
}

impl fmt::Display for Aggregation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Aggregation::RatioOfMeans => "ratio-of-means",
            Aggregation::MeanOfRatios => "mean-of-ratios",
        })
    }
}

/// One sweep over a grid of BS antenna counts.
///
/// Field names match the JSON config file. Missing fields take the values of
/// [`ExperimentConfig::default`]; an empty `beta_users` means unit gains for
/// all `K` users.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(rename = "M_values")]
    pub m_values: Vec<usize>,
    #[serde(rename = "L")]
    pub active: ActiveSpec,
    #[serde(rename = "K")]
    pub users: usize,
    #[serde(rename = "rho_m_dB")]
    pub rho_m_db: f64,
    #[serde(rename = "rho_e_dB")]
    pub rho_e_db: f64,
    pub beta_users: Vec<f64>,
    pub beta_eve: f64,
    pub precoder: PrecoderScheme,
    pub selection: SelectionKind,
    pub criterion: SelectionCriterion,
    pub trials: usize,
    pub master_seed: u64,
    pub aggregation: Aggregation,
}

pub const DEFAULT_TRIALS: usize = 10_000;
pub const DEFAULT_SEED: u64 = 2018;

fn powers_of_two(from: usize, to: usize) -> Vec<usize> {
    std::iter::successors(Some(from), |m| Some(m * 2)).take_while(|&m| m <= to).collect()
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            m_values: powers_of_two(16, 1024),
            active: ActiveSpec::Full,
            users: 1,
            rho_m_db: 0.0,
            rho_e_db: -10.0,
            beta_users: Vec::new(),
            beta_eve: 1.0,
            precoder: PrecoderScheme::Mrt,
            selection: SelectionKind::Full,
            criterion: SelectionCriterion::RowNorm,
            trials: DEFAULT_TRIALS,
            master_seed: DEFAULT_SEED,
            aggregation: Aggregation::RatioOfMeans,
        }
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> SimResult<Self> {
        let cfg: Self =
            serde_json::from_str(text).map_err(|e| SimError::config(format!("invalid config JSON: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> SimResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| SimError::Io { path: path.to_owned(), source })?;
        Self::from_json(&text).map_err(|e| match e {
            SimError::Config(msg) => SimError::config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Checks every invariant before any computation starts.
    pub fn validate(&self) -> SimResult<()> {
        if self.m_values.is_empty() {
            return Err(SimError::config("M_values must not be empty"));
        }
        if self.m_values.contains(&0) {
            return Err(SimError::config("every M must be at least 1"));
        }
        if self.users == 0 {
            return Err(SimError::config("K must be at least 1"));
        }
        if self.trials == 0 {
            return Err(SimError::config("trials must be at least 1"));
        }
        if !self.beta_users.is_empty() && self.beta_users.len() != self.users {
            return Err(SimError::config(format!(
                "beta_users has {} entries but K = {}",
                self.beta_users.len(),
                self.users
            )));
        }
        self.profile()?;
        self.budget()?;
        let min_m = *self.m_values.iter().min().expect("non-empty");
        match (self.selection, self.active) {
            (SelectionKind::Full, ActiveSpec::Full) => {}
            (SelectionKind::Full, ActiveSpec::Count(_)) => {
                return Err(SimError::config("full selection needs L = \"full\""));
            }
            (_, ActiveSpec::Full) => {
                return Err(SimError::config("strongest/random selection needs a numeric L"));
            }
            (_, ActiveSpec::Count(l)) => {
                if l == 0 || l > min_m {
                    return Err(SimError::config(format!("need 1 <= L <= min(M_values) = {min_m}, got L = {l}")));
                }
            }
        }
        if let SelectionCriterion::User(k) = self.criterion {
            if k >= self.users {
                return Err(SimError::config("selection reference user out of range"));
            }
        }
        if self.precoder == PrecoderScheme::Zf {
            let l_min = match self.active {
                ActiveSpec::Count(l) => l,
                ActiveSpec::Full => min_m,
            };
            if self.users > l_min {
                return Err(SimError::config("zero forcing needs K <= L at every sweep point"));
            }
        }
        Ok(())
    }

    pub fn beta_users(&self) -> Vec<f64> {
        if self.beta_users.is_empty() {
            vec![1.0; self.users]
        } else {
            self.beta_users.clone()
        }
    }

    pub fn profile(&self) -> SimResult<LargeScaleProfile> {
        LargeScaleProfile::new(self.beta_users(), self.beta_eve)
            .map_err(|e| SimError::config(format!("large-scale gains: {e}")))
    }

    pub fn budget(&self) -> SimResult<LinkBudget> {
        LinkBudget::from_db(self.rho_m_db, self.rho_e_db).map_err(|e| SimError::config(format!("link budget: {e}")))
    }

    pub fn strategy(&self) -> SelectionStrategy {
        match (self.selection, self.active) {
            (SelectionKind::Strongest, ActiveSpec::Count(active)) => {
                SelectionStrategy::Strongest { active, criterion: self.criterion }
            }
            (SelectionKind::Random, ActiveSpec::Count(active)) => SelectionStrategy::Random { active },
            _ => SelectionStrategy::Full,
        }
    }

    /// Active antenna count at `m` antennas.
    pub fn active_at(&self, m: usize) -> usize {
        match self.active {
            ActiveSpec::Count(l) => l,
            ActiveSpec::Full => m,
        }
    }
}

/// Parameter sets of the two published figures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Full complexity, `K = 4`, `ρ_m = 0 dB`, `ρ_e = -10 dB`.
    Fig1,
    /// `K = 1`, `ρ_m = 0 dB`, `ρ_e = -15 dB`; strongest `L = 1`, `L = 4` and full.
    Fig2,
}

impl FromStr for Preset {
    type Err = SimError;

    fn from_str(s: &str) -> SimResult<Self> {
        match s {
            "fig1" => Ok(Preset::Fig1),
            "fig2" => Ok(Preset::Fig2),
            other => Err(SimError::config(format!("unknown preset {other:?} (expected fig1 or fig2)"))),
        }
    }
}

impl Preset {
    pub fn configs(self) -> Vec<ExperimentConfig> {
        match self {
            Preset::Fig1 => {
                vec![ExperimentConfig { users: 4, rho_m_db: 0.0, rho_e_db: -10.0, ..ExperimentConfig::default() }]
            }
            Preset::Fig2 => {
                let base = ExperimentConfig { users: 1, rho_m_db: 0.0, rho_e_db: -15.0, ..ExperimentConfig::default() };
                // selection curves start at M = L
                let selected = |l: usize| ExperimentConfig {
                    m_values: powers_of_two(l, 1024),
                    active: ActiveSpec::Count(l),
                    selection: SelectionKind::Strongest,
                    ..base.clone()
                };
                vec![selected(1), selected(4), base]
            }
        }
    }
}
