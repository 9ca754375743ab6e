use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::evolution::SolverConfig;
use crate::spectral::GridSpec;

pub const CODE_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

/// A single experiment read from JSON.
///
/// ```json
/// {
///   "experiment": { "kind": "q-constant", "xi": [1.0, 2.0] },
///   "grid": { "half_length_pi": 32, "points": 512 },
///   "datum": { "family": "gaussian", "amplitude": 0.1, "sigma": 0.7071 }
/// }
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub grid: GridParams,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default)]
    pub datum: DatumSpec,
    /// Output directory; the `--out` flag takes precedence.
    #[serde(default)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Experiment {
    /// Full run of the datum, stored as a trajectory.
    Evolve {},
    /// `choose_M` on Gaussians and band noise normalised to `‖u‖_{H^s} = R`,
    /// followed by the energy comparability sweep at the chosen `M`.
    ParadiffProbe {
        #[serde(default = "default_powers")]
        r: Vec<u32>,
        #[serde(default = "default_s")]
        s: f64,
        #[serde(default = "one")]
        radius: f64,
        #[serde(default = "default_energy_samples")]
        energy_samples: usize,
        seed: u64,
    },
    /// Profiles of the linear flow of the datum in one band.
    PacketTest {
        band: i32,
        times: Vec<f64>,
        #[serde(default = "default_velocity_count")]
        velocities: usize,
    },
    QConstant {
        #[serde(default = "default_xi")]
        xi: Vec<f64>,
    },
    /// Evolve-then-rescale against rescale-then-evolve.
    ScalingCheck {
        #[serde(default = "default_kappa")]
        kappa: Vec<f64>,
    },
    /// Remainder of the paralinearisation around the datum against band noise.
    ParalinCheck {
        #[serde(default = "default_paralin_bands")]
        bands: Vec<i32>,
        #[serde(default = "default_cutoff")]
        cutoff: f64,
        seed: u64,
    },
    /// Nonlinear and linear runs, `Y`-norm decay, profiles and scattering fits.
    DecayStudy {
        #[serde(default = "default_delta")]
        delta: f64,
        #[serde(default)]
        bands: Vec<i32>,
        #[serde(default)]
        profile_times: Vec<f64>,
        #[serde(default)]
        fit_window: Option<(f64, f64)>,
    },
}

fn default_powers() -> Vec<u32> {
    vec![1, 6]
}
fn default_s() -> f64 {
    3.0
}
fn one() -> f64 {
    1.0
}
fn default_energy_samples() -> usize {
    50
}
fn default_velocity_count() -> usize {
    16
}
fn default_xi() -> Vec<f64> {
    vec![1.0]
}
fn default_kappa() -> Vec<f64> {
    vec![0.5, 2.0]
}
fn default_paralin_bands() -> Vec<i32> {
    vec![3, 4, 5, 6]
}
fn default_cutoff() -> f64 {
    2.0
}
fn default_delta() -> f64 {
    0.1
}

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Experiment::Evolve {} => "evolve",
            Experiment::ParadiffProbe { .. } => "paradiff-probe",
            Experiment::PacketTest { .. } => "packet-test",
            Experiment::QConstant { .. } => "q-constant",
            Experiment::ScalingCheck { .. } => "scaling-check",
            Experiment::ParalinCheck { .. } => "paralin-check",
            Experiment::DecayStudy { .. } => "decay-study",
        }
    }

    fn seed_mut(&mut self) -> Option<&mut u64> {
        match self {
            Experiment::ParadiffProbe { seed, .. } | Experiment::ParalinCheck { seed, .. } => Some(seed),
            _ => None,
        }
    }
}

/// Half length given either directly or in units of `π`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub half_length: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub half_length_pi: Option<f64>,
    pub points: usize,
}

impl GridParams {
    pub fn pi_multiple(multiple: f64, points: usize) -> Self {
        Self { half_length: None, half_length_pi: Some(multiple), points }
    }

    pub fn half_length(&self) -> Result<f64> {
        match (self.half_length, self.half_length_pi) {
            (Some(l), None) => Ok(l),
            (None, Some(m)) => Ok(m * std::f64::consts::PI),
            _ => Err(Error::invalid("grid needs exactly one of half_length and half_length_pi")),
        }
    }

    pub fn build(&self) -> Result<GridSpec<f64>> {
        GridSpec::new(self.half_length()?, self.points)
    }
}

/// Initial datum families.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum DatumSpec {
    #[default]
    Zero,
    /// `A exp(-(x - x₀)² / (2σ²))`.
    Gaussian {
        amplitude: f64,
        sigma: f64,
        #[serde(default)]
        center: f64,
    },
    /// `A cos(k x)`; `k` must be a lattice wavenumber.
    Mode { k: f64, amplitude: f64 },
    /// Random band-limited field in the dyadic band `2^band`, scaled to `max|φ| = A`.
    Noise { band: i32, amplitude: f64, seed: u64 },
}

impl ExperimentConfig {
    /// Parses JSON; syntax and schema errors carry the line and column.
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| {
            Error::invalid(format!("config line {} column {}: {e}", e.line(), e.column()))
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::InvalidArgument(m) => Error::invalid(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn validate(&self) -> Result<()> {
        self.grid.build()?;
        self.solver.validate()?;
        match &self.datum {
            DatumSpec::Gaussian { sigma, amplitude, .. } if !(*sigma > 0.0) || !amplitude.is_finite() => {
                return Err(Error::invalid("gaussian datum needs sigma > 0 and a finite amplitude"))
            }
            DatumSpec::Noise { amplitude, .. } if !amplitude.is_finite() => {
                return Err(Error::invalid("noise datum needs a finite amplitude"))
            }
            _ => {}
        }
        match &self.experiment {
            Experiment::PacketTest { times, velocities, .. } if times.is_empty() || *velocities == 0 => {
                Err(Error::invalid("packet-test needs at least one time and one velocity"))
            }
            Experiment::ScalingCheck { kappa } if kappa.iter().any(|k| !(*k > 0.0)) => {
                Err(Error::invalid("scaling factors must be positive"))
            }
            Experiment::QConstant { xi } if xi.iter().any(|x| *x == 0.0 || !x.is_finite()) => {
                Err(Error::invalid("q-constant needs nonzero finite frequencies"))
            }
            _ => Ok(()),
        }
    }

    /// Replaces every seed in the config.
    pub fn override_seed(&mut self, seed: u64) {
        if let Some(s) = self.experiment.seed_mut() {
            *s = seed;
        }
        if let DatumSpec::Noise { seed: s, .. } = &mut self.datum {
            *s = seed;
        }
    }

    /// SHA-256 of the canonical JSON form, hex encoded.
    pub fn hash(&self) -> String {
        config_hash(self)
    }
}

pub fn config_hash<C: Serialize>(config: &C) -> String {
    let bytes = serde_json::to_vec(config).expect("configs serialise");
    hex::encode(Sha256::digest(bytes))
}
