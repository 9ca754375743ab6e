use std::fs;
use std::path::Path;

use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::config::{Experiment, ExperimentConfig};
use super::datum::{band_noise, build_datum};
use crate::error::{Error, Result};
use crate::evolution::{evolve, linear_propagator, scaling_transform, write_trajectory, SolverConfig, Trajectory};
use crate::front::{f_shape, paralin_residual, QuadratureScheme};
use crate::paradiff::{apply_ta, choose_m, modified_energy, ParaCutoff};
use crate::scattering::{
    band_velocities, decay_report, fit_scattering, q_constant, DecayReport, ProfileRecord, ScatteringFit,
};
use crate::spectral::{apply_multiplier, derivative, sobolev_norm, DyadicBand, Field, FourierMultiplier, GridSpec};

/// Runs one configured experiment, writing its files under `out`, and
/// returns the JSON payload of its report.
pub fn run_experiment(cfg: &ExperimentConfig, out: &Path) -> Result<Value> {
    fs::create_dir_all(out)?;
    let grid = cfg.grid.build()?;
    let phi0 = build_datum(&cfg.datum, &grid)?;
    match &cfg.experiment {
        Experiment::Evolve {} => {
            let traj = match evolve(&phi0, &cfg.solver) {
                Ok(t) => t,
                Err(e) => {
                    if let Some(partial) = e.partial() {
                        write_trajectory(&out.join("trajectory"), partial)?;
                    }
                    return Err(e.into());
                }
            };
            write_trajectory(&out.join("trajectory"), &traj)?;
            let last = traj.monitors.last().expect("at least the initial monitor");
            Ok(json!({
                "steps": traj.steps_taken(),
                "t_final": last.t,
                "snapshots": traj.snapshots.len(),
                "max_mass_drift": traj.max_mass_drift(),
                "final": last,
            }))
        }
        Experiment::ParadiffProbe { r, s, radius, energy_samples, seed } => {
            let mut rng = super::datum::rng(*seed);
            let samples = norm_probe_samples(&grid, *s, *radius, &mut rng);
            let probes = r.iter().map(|&r| choose_m(*radius, r, *s, &samples)).collect::<Result<Vec<_>>>()?;
            let m = probes.iter().map(|p| p.chosen_m).fold(0.0, f64::max);
            let energy = energy_comparability(&samples[1], *s, m, *energy_samples, &mut rng)?;
            write_json(&out.join("norm_probe.json"), &probes)?;
            Ok(json!({ "probes": probes, "chosen_M": m, "energy": energy }))
        }
        Experiment::PacketTest { band, times, velocities } => {
            let band = DyadicBand(*band);
            let mut rec = ProfileRecord::new(band, band_velocities(band, *velocities));
            for &t in times {
                let phi = apply_multiplier(&phi0, &linear_propagator(&grid, t))?;
                rec.push_state(&phi, t)?;
            }
            rec.write_csv(&out.join("profile.csv"))?;
            Ok(json!({ "band": band.frequency::<f64>(), "modulus_drift": modulus_drift(&rec, times[0], *times.last().unwrap()) }))
        }
        Experiment::QConstant { xi } => {
            let rows = xi
                .iter()
                .map(|&x| {
                    let q = q_constant(x)?;
                    Ok(json!({ "xi": x, "re": q.re, "im": q.im, "closed_form": q_closed_form(x) }))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(json!({ "values": rows }))
        }
        Experiment::ScalingCheck { kappa } => {
            let rows = kappa
                .iter()
                .map(|&k| Ok(json!({ "kappa": k, "discrepancy": scaling_discrepancy(&phi0, &cfg.solver, k)? })))
                .collect::<Result<Vec<_>>>()?;
            Ok(json!({ "t_final": cfg.solver.t_final, "rows": rows }))
        }
        Experiment::ParalinCheck { bands, cutoff, seed } => {
            let q = cfg.solver.quadrature.build(&grid)?;
            let rows = paralin_sweep(&phi0, &q, *cutoff, bands, &mut super::datum::rng(*seed))?;
            Ok(json!({ "cutoff": cutoff, "rows": rows }))
        }
        Experiment::DecayStudy { delta, bands, profile_times, fit_window } => {
            let study = decay_study(&phi0, &cfg.solver, *delta)?;
            study.decay.write_csv(&out.join("decay.csv"))?;
            study.linear_decay.write_csv(&out.join("decay_linear.csv"))?;
            let mut profiles = Vec::new();
            for &b in bands {
                let p = study.profiles(DyadicBand(b), profile_times, *fit_window)?;
                p.nonlinear.write_csv(&out.join(format!("profile_band{b}.csv")))?;
                write_json(&out.join(format!("fit_band{b}.json")), &p.fit)?;
                profiles.push(p.summary());
            }
            Ok(json!({
                "decay_slope": study.decay.slope,
                "linear_decay_slope": study.linear_decay.slope,
                "sup_scaled": study.decay.sup_scaled(1.0, f64::INFINITY),
                "max_mass_drift": study.nonlinear.max_mass_drift(),
                "profiles": profiles,
            }))
        }
    }
}

pub(crate) fn write_json<S: Serialize + ?Sized>(path: &Path, value: &S) -> Result<()> {
    fs::write(path, serde_json::to_vec_pretty(value)?)?;
    Ok(())
}

/// `-(4/3) ln 2 · ξ²`.
pub fn q_closed_form(xi: f64) -> f64 {
    -4.0 / 3.0 * std::f64::consts::LN_2 * xi * xi
}

/// Relative `L²` gap between evolving then rescaling by `κ` and rescaling
/// then evolving for the rescaled time, with the same `dt`.
pub fn scaling_discrepancy(phi0: &Field<f64>, solver: &SolverConfig, kappa: f64) -> Result<f64> {
    let final_only = |t_final: f64| -> Result<SolverConfig> {
        let cfg = SolverConfig { t_final, ..solver.clone() };
        Ok(SolverConfig { record_stride: cfg.steps()?.max(1), ..cfg })
    };
    let direct = evolve(phi0, &final_only(solver.t_final)?)?;
    let (lhs, _) = scaling_transform(&direct.last().field, solver.t_final, kappa)?;
    let (psi0, _) = scaling_transform(phi0, 0.0, kappa)?;
    let mut cfg = final_only(kappa * solver.t_final)?;
    if let Some(y) = cfg.quadrature.y_max.as_mut() {
        *y *= kappa;
    }
    let rescaled = evolve(&psi0, &cfg)?;
    lhs.rel_l2_distance(&rescaled.last().field)
}

#[derive(Clone, Debug, Serialize)]
pub struct ParalinRow {
    pub band: f64,
    /// `‖∂_x R‖ / ‖v‖`.
    pub remainder: f64,
    /// `‖∂_x T_{F(φ_x)} log|D| v‖ / ‖v‖`.
    pub main: f64,
}

pub fn paralin_sweep(
    phi: &Field<f64>,
    q: &QuadratureScheme<f64>,
    cutoff: f64,
    bands: &[i32],
    rng: &mut ChaCha8Rng,
) -> Result<Vec<ParalinRow>> {
    let c = ParaCutoff::new(cutoff)?;
    let slope_shape = derivative(phi).map(f_shape);
    bands
        .iter()
        .map(|&b| {
            let band = DyadicBand(b);
            let v = band_noise(phi.grid(), band, rng);
            let r = paralin_residual(phi, &v, q, &c)?;
            let log_v = apply_multiplier(&v, &FourierMultiplier::log_abs(phi.grid()))?;
            let main = derivative(&apply_ta(&slope_shape, &log_v, &c)?);
            Ok(ParalinRow {
                band: band.frequency(),
                remainder: derivative(&r).l2_norm() / v.l2_norm(),
                main: main.l2_norm() / v.l2_norm(),
            })
        })
        .collect()
}

/// Gaussians of several widths and band noise, each scaled to `‖u‖_{H^s} = R`.
pub fn norm_probe_samples(grid: &GridSpec<f64>, s: f64, radius: f64, rng: &mut ChaCha8Rng) -> Vec<Field<f64>> {
    let gaussians = [0.3, 0.6, 1.0, 2.0].map(|w: f64| Field::from_fn(grid, |x: f64| (-(x / w).powi(2)).exp()));
    let noise = (0..4).map(|b| band_noise(grid, DyadicBand(b), rng)).collect::<Vec<_>>();
    gaussians
        .into_iter()
        .chain(noise)
        .filter_map(|u| {
            let n = sobolev_norm(&u, s);
            (n > 0.0).then(|| u.scale(radius / n))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct EnergySweep {
    #[serde(rename = "M")]
    pub m: f64,
    pub samples: usize,
    /// `min E^s(v) / ‖P_{>M} v‖²_{H^s}`.
    pub c1: f64,
    /// `max E^s(v) / ‖v‖²_{H^s}`.
    pub c2: f64,
    pub ratio: f64,
    pub min_energy: f64,
}

/// Comparability of `E^s(v)` with `‖v‖²_{H^s}` over random test fields
/// concentrated above `M`, each with a 10% component in an arbitrary band.
pub fn energy_comparability(phi: &Field<f64>, s: f64, m: f64, count: usize, rng: &mut ChaCha8Rng) -> Result<EnergySweep> {
    use rand::Rng;
    let grid = phi.grid();
    let c = ParaCutoff::new(m)?;
    let top = (grid.nyquist() / std::f64::consts::SQRT_2).log2().floor() as i32;
    let lowest = (m.log2() as i32 + 1).min(top);
    let high_pass = FourierMultiplier::even(grid, "P_{>M}", |xi| c.high_pass(xi));
    let (mut c1, mut c2, mut min_energy) = (f64::INFINITY, 0.0f64, f64::INFINITY);
    for _ in 0..count {
        let main = band_noise(grid, DyadicBand(rng.gen_range(lowest..=top)), rng);
        let extra = band_noise(grid, DyadicBand(rng.gen_range(-1..=top)), rng);
        let v = main.add(&extra.scale(0.1))?;
        let e = modified_energy(phi, &v, s, &c)?.total();
        let high = sobolev_norm(&apply_multiplier(&v, &high_pass)?, s).powi(2);
        c1 = c1.min(e / high);
        c2 = c2.max(e / sobolev_norm(&v, s).powi(2));
        min_energy = min_energy.min(e);
    }
    Ok(EnergySweep { m, samples: count, c1, c2, ratio: c2 / c1, min_energy })
}

/// Nonlinear and linear runs of the same datum.
pub struct DecayStudy {
    pub nonlinear: Trajectory<f64>,
    pub linear: Trajectory<f64>,
    pub decay: DecayReport,
    pub linear_decay: DecayReport,
}

pub fn decay_study(phi0: &Field<f64>, solver: &SolverConfig, delta: f64) -> Result<DecayStudy> {
    let nonlinear = evolve(phi0, solver)?;
    let linear = evolve(phi0, &SolverConfig { linear_only: true, ..solver.clone() })?;
    let decay = decay_report(&nonlinear.snapshots, delta)?;
    let linear_decay = decay_report(&linear.snapshots, delta)?;
    Ok(DecayStudy { nonlinear, linear, decay, linear_decay })
}

/// Profiles of one band in both runs and the fit of the nonlinear profile
/// measured against the linear one.
pub struct BandProfiles {
    pub nonlinear: ProfileRecord,
    pub linear: ProfileRecord,
    pub fit: ScatteringFit,
}

impl DecayStudy {
    pub fn profiles(&self, band: DyadicBand, times: &[f64], window: Option<(f64, f64)>) -> Result<BandProfiles> {
        let velocities = band_velocities(band, 16);
        let record = |traj: &Trajectory<f64>| -> Result<ProfileRecord> {
            let mut rec = ProfileRecord::new(band, velocities.clone());
            for &t in times {
                let snap = traj
                    .snapshots
                    .iter()
                    .find(|s| (s.time - t).abs() < 1e-9 * t.max(1.0))
                    .ok_or_else(|| Error::invalid(format!("no snapshot at t = {t}")))?;
                rec.push_state(&snap.field, t)?;
            }
            Ok(rec)
        };
        let nonlinear = record(&self.nonlinear)?;
        let linear = record(&self.linear)?;
        let fit = fit_scattering(&nonlinear.relative_to(&linear)?, window)?;
        Ok(BandProfiles { nonlinear, linear, fit })
    }
}

impl BandProfiles {
    pub fn summary(&self) -> Value {
        let times = self.nonlinear.times();
        let (t1, t2) = (times[0], *times.last().unwrap());
        json!({
            "band": self.nonlinear.band.frequency::<f64>(),
            "modulus_drift": modulus_drift(&self.nonlinear, t1, t2),
            "linear_modulus_drift": modulus_drift(&self.linear, t1, t2),
            "fit": self.fit,
        })
    }
}

/// `max_v ||γ(t₂, v)| - |γ(t₁, v)|| / max |γ|`, the maximum taken over both rows.
pub fn modulus_drift(rec: &ProfileRecord, t1: f64, t2: f64) -> f64 {
    let row = |t: f64| rec.rows.iter().find(|r| (r.t - t).abs() < 1e-9 * t.max(1.0));
    let (Some(a), Some(b)) = (row(t1), row(t2)) else {
        return f64::NAN;
    };
    let peak = a.gamma.iter().chain(&b.gamma).map(|z| z.norm()).fold(0.0, f64::max);
    if peak == 0.0 {
        return 0.0;
    }
    a.gamma.iter().zip(&b.gamma).map(|(x, y)| (x.norm() - y.norm()).abs()).fold(0.0, f64::max) / peak
}
