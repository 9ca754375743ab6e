use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::cubic::q_constant;
use super::dispersion::frequency_for_velocity;
use super::profile::ProfileRecord;
use crate::error::{Error, Result};

/// Factor between `q(ξ_v) ξ_v |γ|²` and the phase rate of `γ` in `ln t`
/// for a real solution. The cubic part of `A_φ φ_x` is `½ ∂_x Q(φ)`, and
/// three of the eight terms of `Q(w + w̄)` are resonant with `w`.
pub const RESONANCE_FACTOR: f64 = 1.5;

/// Predicted phase rate `d arg γ / d ln t` at velocity `v` and modulus `w`.
pub fn resonance_rate(q_unit: f64, v: f64, w: f64) -> f64 {
    let xi = frequency_for_velocity(v);
    RESONANCE_FACTOR * q_unit * xi * xi * xi * w * w
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VelocityFit {
    pub v: f64,
    #[serde(rename = "|W|")]
    pub w_abs: f64,
    pub w_arg: f64,
    pub phase_slope_fit: f64,
    pub phase_slope_pred: f64,
    pub residual: f64,
}

impl VelocityFit {
    pub fn w(&self) -> Complex<f64> {
        Complex::from_polar(self.w_abs, self.w_arg)
    }
}

/// Per-velocity fit of `γ(t) ≈ W e^{i S ln t}` over a time window.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScatteringFit {
    /// `q(1)`; the rate at `v` uses `q(ξ_v) = ξ_v² q(1)`.
    pub q_used: f64,
    pub window: (f64, f64),
    pub fits: Vec<VelocityFit>,
}

/// Fits over `window`, or over the last decade of recorded times.
///
/// `|W|` is the mean of `|γ|`; the fitted slope is the least-squares slope
/// of the unwrapped phase against `ln t`; the residual is the rms distance
/// of `γ` from `W e^{i S_pred ln t}` with `arg W` chosen optimally.
pub fn fit_scattering(rec: &ProfileRecord, window: Option<(f64, f64)>) -> Result<ScatteringFit> {
    let times = rec.times();
    let t_last = *times.last().ok_or_else(|| Error::invalid("empty profile record"))?;
    let (t1, t2) = window.unwrap_or((t_last / 10.0, t_last));
    let idx: Vec<usize> = (0..times.len()).filter(|&i| times[i] >= t1 * (1.0 - 1e-12) && times[i] <= t2).collect();
    if idx.len() < 4 {
        return Err(Error::invalid(format!(
            "need at least 4 samples in [{t1}, {t2}], found {}",
            idx.len()
        )));
    }
    let q_unit = q_constant(1.0)?.re;
    let logs: Vec<f64> = idx.iter().map(|&i| times[i].ln()).collect();
    let fits = rec
        .velocities
        .iter()
        .enumerate()
        .map(|(j, &v)| {
            let series: Vec<Complex<f64>> = idx.iter().map(|&i| rec.rows[i].gamma[j]).collect();
            fit_one(v, q_unit, &logs, &series)
        })
        .collect();
    Ok(ScatteringFit { q_used: q_unit, window: (times[idx[0]], times[*idx.last().unwrap()]), fits })
}

fn fit_one(v: f64, q_unit: f64, logs: &[f64], series: &[Complex<f64>]) -> VelocityFit {
    let n = series.len() as f64;
    let w_abs = series.iter().map(|z| z.norm()).sum::<f64>() / n;
    let phases = unwrap(series.iter().map(|z| z.arg()));
    let phase_slope_fit = least_squares_slope(logs, &phases);
    let phase_slope_pred = resonance_rate(q_unit, v, w_abs);
    let offset: Vec<f64> = phases.iter().zip(logs).map(|(p, l)| p - phase_slope_pred * l).collect();
    let w_arg = offset.iter().sum::<f64>() / n;
    let w = Complex::from_polar(w_abs, w_arg);
    let residual = (series
        .iter()
        .zip(logs)
        .map(|(z, l)| (z - w * Complex::from_polar(1.0, phase_slope_pred * l)).norm_sqr())
        .sum::<f64>()
        / n)
        .sqrt();
    VelocityFit { v, w_abs, w_arg, phase_slope_fit, phase_slope_pred, residual }
}

fn unwrap(phases: impl Iterator<Item = f64>) -> Vec<f64> {
    let tau = 2.0 * std::f64::consts::PI;
    let mut out: Vec<f64> = Vec::new();
    for p in phases {
        let next = match out.last() {
            Some(&prev) => p + tau * ((prev - p) / tau).round(),
            None => p,
        };
        out.push(next);
    }
    out
}

fn least_squares_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}
