//! Configuration-driven experiments and the acceptance suites.

mod config;
mod criteria;
mod datum;
mod experiments;
mod suite;

use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use config::{config_hash, DatumSpec, Experiment, ExperimentConfig, GridParams, CODE_VERSION};
pub use criteria::{run_criterion, Criterion, CriterionResult, Shared, PROFILE_TIMES, SCATTERING_BAND};
pub use datum::{band_noise, build_datum, rng};
pub use experiments::{
    decay_study, energy_comparability, modulus_drift, norm_probe_samples, paralin_sweep, q_closed_form,
    run_experiment, scaling_discrepancy, BandProfiles, DecayStudy, EnergySweep, ParalinRow,
};
pub use suite::{run_suite, SuiteName, SuiteReport, DETERMINISM_THREADS};

use crate::error::Result;

/// Envelope written as `report.json` next to an experiment's other outputs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub kind: String,
    pub config_hash: String,
    pub code_version: String,
    pub payload: serde_json::Value,
    pub elapsed_seconds: f64,
}

/// Runs `cfg`, writing its files and `report.json` under `out`.
pub fn run_config(cfg: &ExperimentConfig, out: &Path) -> Result<Report> {
    let start = Instant::now();
    let payload = run_experiment(cfg, out)?;
    let report = Report {
        kind: cfg.experiment.name().to_string(),
        config_hash: cfg.hash(),
        code_version: CODE_VERSION.to_string(),
        payload,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    };
    std::fs::write(out.join("config.json"), serde_json::to_vec_pretty(cfg)?)?;
    std::fs::write(out.join("report.json"), serde_json::to_vec_pretty(&report)?)?;
    Ok(report)
}
