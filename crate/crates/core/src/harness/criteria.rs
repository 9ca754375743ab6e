use std::f64::consts::{LN_2, PI};
use std::sync::OnceLock;
use std::time::Instant;

use num_complex::Complex;
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::datum::{band_noise, rng};
use super::experiments::{
    decay_study, energy_comparability, modulus_drift, norm_probe_samples, paralin_sweep, q_closed_form,
    scaling_discrepancy, DecayStudy,
};
use crate::error::{Error, Result};
use crate::evolution::{evolve, SolverConfig, Trajectory};
use crate::front::{apply_a, f_shape, QuadratureScheme};
use crate::paradiff::{choose_m, norm_bound, ta_matrix, ParaCutoff};
use crate::scattering::{
    dispersion_curvature, dispersion_point, fit_scattering, frequency_for_velocity, group_velocity, packet_phase,
    q_constant, resonance_rate, ProfileRecord, ProfileRow,
};
use crate::spectral::{DyadicBand, Field, GridSpec};

/// Outcome of one acceptance criterion.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub summary: String,
    /// Measured values; deterministic for a given build.
    pub payload: Value,
    pub elapsed_seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:02} {}: {} ({:.1} s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.summary,
            self.elapsed_seconds
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Criterion {
    LinearExactness,
    MassConservation,
    TemporalOrder,
    OperatorOracle,
    ScalingSymmetry,
    Paralinearization,
    Quantization,
    ModifiedEnergy,
    DispersionIdentities,
    ResonanceConstant,
    DispersiveDecay,
    Scattering,
    /// The synthetic half of [`Criterion::Scattering`] only.
    SyntheticFit,
}

impl Criterion {
    pub fn id(self) -> u8 {
        match self {
            Criterion::LinearExactness => 1,
            Criterion::MassConservation => 2,
            Criterion::TemporalOrder => 3,
            Criterion::OperatorOracle => 4,
            Criterion::ScalingSymmetry => 5,
            Criterion::Paralinearization => 6,
            Criterion::Quantization => 7,
            Criterion::ModifiedEnergy => 8,
            Criterion::DispersionIdentities => 9,
            Criterion::ResonanceConstant => 10,
            Criterion::DispersiveDecay => 11,
            Criterion::Scattering | Criterion::SyntheticFit => 12,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Criterion::LinearExactness => "linear exactness",
            Criterion::MassConservation => "mass conservation",
            Criterion::TemporalOrder => "temporal order",
            Criterion::OperatorOracle => "operator oracle",
            Criterion::ScalingSymmetry => "scaling symmetry",
            Criterion::Paralinearization => "paralinearization",
            Criterion::Quantization => "quantization",
            Criterion::ModifiedEnergy => "modified energy",
            Criterion::DispersionIdentities => "dispersion identities",
            Criterion::ResonanceConstant => "resonance constant",
            Criterion::DispersiveDecay => "dispersive decay",
            Criterion::Scattering => "profile and scattering",
            Criterion::SyntheticFit => "profile and scattering (synthetic fit only)",
        }
    }
}

/// Runs shared by several criteria, computed on first use.
#[derive(Default)]
pub struct Shared {
    mass: [OnceLock<std::result::Result<Trajectory<f64>, String>>; 3],
    scattering: OnceLock<std::result::Result<DecayStudy, String>>,
}

/// Time steps of the conservation and order runs.
const MASS_DT: [f64; 3] = [1e-2, 5e-3, 2.5e-3];

/// Snapshot times used for the profiles; close to a geometric progression.
pub const PROFILE_TIMES: [f64; 5] = [8.0, 11.0, 16.0, 23.0, 32.0];

/// Band whose profile drift and phase slopes are judged.
pub const SCATTERING_BAND: DyadicBand = DyadicBand(2);

impl Shared {
    fn mass_run(&self, k: usize) -> Result<&Trajectory<f64>> {
        self.mass[k]
            .get_or_init(|| {
                let g = GridSpec::new(32.0 * PI, 512).map_err(|e| e.to_string())?;
                let phi0 = Field::from_fn(&g, |x: f64| 0.1 * (-x * x).exp());
                let cfg = SolverConfig { dt: MASS_DT[k], t_final: 5.0, record_stride: usize::MAX, ..Default::default() };
                evolve(&phi0, &cfg).map_err(|e| Error::from(e).to_string())
            })
            .as_ref()
            .map_err(|e| Error::numerical(e.clone()))
    }

    /// `ε e^{-x²/(2σ²)}`, `ε = 0.01`, `σ = 0.3`, on `L = 80π`, `N = 2048`,
    /// to `t = 50` with `dt = 0.05`, snapshots every unit of time.
    pub fn scattering(&self) -> Result<&DecayStudy> {
        self.scattering
            .get_or_init(|| {
                let g = GridSpec::new(80.0 * PI, 2048).map_err(|e| e.to_string())?;
                let phi0 = Field::from_fn(&g, |x: f64| 0.01 * (-x * x / 0.18).exp());
                let cfg = SolverConfig { dt: 0.05, t_final: 50.0, record_stride: 20, ..Default::default() };
                decay_study(&phi0, &cfg, 0.1).map_err(|e| e.to_string())
            })
            .as_ref()
            .map_err(|e| Error::numerical(e.clone()))
    }
}

type Measured = (bool, String, Value);

pub fn run_criterion(c: Criterion, shared: &Shared) -> CriterionResult {
    let start = Instant::now();
    let outcome = match c {
        Criterion::LinearExactness => linear_exactness(),
        Criterion::MassConservation => mass_conservation(shared),
        Criterion::TemporalOrder => temporal_order(shared),
        Criterion::OperatorOracle => operator_oracle(),
        Criterion::ScalingSymmetry => scaling_symmetry(),
        Criterion::Paralinearization => paralinearization(),
        Criterion::Quantization => quantization(),
        Criterion::ModifiedEnergy => modified_energy_comparability(),
        Criterion::DispersionIdentities => dispersion_identities(),
        Criterion::ResonanceConstant => resonance_constant(),
        Criterion::DispersiveDecay => dispersive_decay(shared),
        Criterion::Scattering => scattering(shared, true),
        Criterion::SyntheticFit => scattering(shared, false),
    };
    let (passed, summary, payload) = outcome.unwrap_or_else(|e| (false, format!("error: {e}"), json!({ "error": e.to_string() })));
    CriterionResult { id: c.id(), name: c.name(), passed, summary, payload, elapsed_seconds: start.elapsed().as_secs_f64() }
}

fn linear_exactness() -> Result<Measured> {
    let g = GridSpec::new(PI, 64)?;
    let phi0 = Field::from_fn(&g, |x: f64| (2.0 * x).cos());
    let cfg = SolverConfig { dt: 1e-2, t_final: 1.0, linear_only: true, ..Default::default() };
    let traj = evolve(&phi0, &cfg)?;
    // ∂_t φ̂ = 2iξ log|ξ| φ̂ turns the ξ = ±2 pair into cos(2x + 4 log 2 t).
    let exact = Field::from_fn(&g, |x: f64| (2.0 * x + 4.0 * LN_2).cos());
    let err = traj.last().field.rel_l2_distance(&exact)?;
    Ok((err <= 1e-10, format!("relative L2 error {err:.2e} at t = 1 (tol 1e-10)"), json!({ "relative_l2_error": err })))
}

fn mass_conservation(shared: &Shared) -> Result<Measured> {
    let d1 = shared.mass_run(0)?.max_mass_drift();
    let d2 = shared.mass_run(1)?.max_mass_drift();
    let ratio = d1 / d2;
    let passed = d1 <= 1e-6 && ratio >= 4.0;
    Ok((
        passed,
        format!("max relative drift {d1:.2e} at dt = 1e-2 (tol 1e-6), {d2:.2e} at dt = 5e-3, reduction {ratio:.2}x (need >= 4)"),
        json!({ "drift_dt": d1, "drift_half_dt": d2, "reduction": ratio }),
    ))
}

fn temporal_order(shared: &Shared) -> Result<Measured> {
    let u: Vec<&Field<f64>> = (0..3).map(|k| shared.mass_run(k).map(|t| &t.last().field)).collect::<Result<_>>()?;
    let e1 = u[0].sub(u[1])?.l2_norm();
    let e2 = u[1].sub(u[2])?.l2_norm();
    let order = (e1 / e2).log2();
    Ok((
        (order - 4.0).abs() <= 0.2,
        format!("observed order {order:.3} from dt = 1e-2, 5e-3, 2.5e-3 (need 4.0 +/- 0.2)"),
        json!({ "differences": [e1, e2], "order": order }),
    ))
}

/// Lagrange interpolation of periodic samples `vals` (spacing `h`, first
/// point `x0`) through `order` neighbouring points.
fn lagrange_periodic(vals: &[f64], h: f64, x0: f64, x: f64, order: usize) -> f64 {
    let n = vals.len() as i64;
    let u = ((x - x0) / h).rem_euclid(n as f64);
    let base = u.floor() as i64 - (order as i64 / 2 - 1);
    let mut sum = 0.0;
    for a in 0..order as i64 {
        let mut l = 1.0;
        for b in 0..order as i64 {
            if a != b {
                l *= (u - (base + b) as f64) / (a - b) as f64;
            }
        }
        sum += l * vals[(base + a).rem_euclid(n) as usize];
    }
    sum
}

fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (mx, my) = points.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x.ln() / n, b + y.ln() / n));
    let (sxy, sxx) = points.iter().fold((0.0, 0.0), |(a, b), &(x, y)| {
        (a + (x.ln() - mx) * (y.ln() - my), b + (x.ln() - mx).powi(2))
    });
    sxy / sxx
}

fn operator_oracle() -> Result<Measured> {
    let half = 32.0 * PI;
    let g = GridSpec::new(half, 512)?;
    let profile = |x: f64| 0.5 * (-x * x).exp();
    let phi = Field::from_fn(&g, profile);

    // Brute force: φ(x + y) from degree-9 interpolation of exact samples on a 16x finer grid.
    let q = QuadratureScheme::new(16.0 * PI, 2048, 2.0)?;
    let fast = apply_a(&phi, &phi, &q)?;
    let fine_n = 16 * g.len();
    let h = 2.0 * half / fine_n as f64;
    let fine: Vec<f64> = (0..fine_n).map(|j| profile(-half + j as f64 * h)).collect();
    let nodes = q.nodes();
    let brute: Vec<f64> = g
        .points()
        .iter()
        .map(|&x| {
            let p0 = profile(x);
            nodes
                .iter()
                .map(|&(y, w)| {
                    let d = lagrange_periodic(&fine, h, -half, x + y, 10) - p0;
                    w * f_shape(d / y) * d / y.abs()
                })
                .sum()
        })
        .collect();
    let oracle_gap = fast.rel_l2_distance(&Field::new(&g, brute)?)?;

    // Self-convergence in the node count.
    let counts = [128, 256, 512, 1024, 2048];
    let results = counts
        .iter()
        .map(|&n| apply_a(&phi, &phi, &QuadratureScheme::new(16.0 * PI, n, 2.0)?))
        .collect::<Result<Vec<_>>>()?;
    let diffs = results.windows(2).map(|w| Ok(w[1].sub(&w[0])?.l2_norm())).collect::<Result<Vec<f64>>>()?;
    let orders: Vec<f64> = diffs.windows(2).map(|d| (d[0] / d[1]).log2()).collect();
    let min_order = orders.iter().copied().fold(f64::INFINITY, f64::min);

    // Truncation: consecutive doublings of Y_max at fixed node spacing.
    let spacing = 16.0 * PI / 2048.0;
    let y_values = [PI, 2.0 * PI, 4.0 * PI, 8.0 * PI, 16.0 * PI];
    let tails = y_values
        .iter()
        .map(|&y| apply_a(&phi, &phi, &QuadratureScheme::new(y, 2 * (y / spacing).round() as usize, 1.0)?))
        .collect::<Result<Vec<_>>>()?;
    let tail_points = tails
        .windows(2)
        .zip(&y_values)
        .map(|(w, &y)| Ok((y, w[1].sub(&w[0])?.l2_norm())))
        .collect::<Result<Vec<_>>>()?;
    let tail_slope = log_log_slope(&tail_points);

    let passed = oracle_gap <= 1e-6 && min_order >= 2.0 && (tail_slope + 2.0).abs() <= 0.3;
    Ok((
        passed,
        format!(
            "oracle gap {oracle_gap:.2e} (tol 1e-6), min N_y order {min_order:.2} (need >= 2), Y_max tail slope {tail_slope:.3} (need -2 +/- 0.3)"
        ),
        json!({
            "oracle_relative_l2": oracle_gap,
            "node_counts": counts,
            "node_orders": orders,
            "tail": tail_points,
            "tail_slope": tail_slope,
        }),
    ))
}

fn scaling_symmetry() -> Result<Measured> {
    let g = GridSpec::new(32.0 * PI, 512)?;
    let phi0 = Field::from_fn(&g, |x: f64| 0.1 * (-x * x).exp());
    let cfg = SolverConfig { dt: 1e-2, t_final: 1.0, ..Default::default() };
    let rows = [0.5, 2.0].map(|k| scaling_discrepancy(&phi0, &cfg, k).map(|d| (k, d)));
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let worst = rows.iter().map(|r| r.1).fold(0.0, f64::max);
    let text = rows.iter().map(|(k, d)| format!("kappa {k}: {d:.2e}")).collect::<Vec<_>>().join(", ");
    Ok((worst <= 1e-4, format!("{text} (tol 1e-4)"), json!({ "rows": rows })))
}

fn paralinearization() -> Result<Measured> {
    let g = GridSpec::new(4.0 * PI, 2048)?;
    let phi = Field::from_fn(&g, |x: f64| 0.3 * (-x * x).exp());
    // The y rule must resolve e^{iξy} up to |ξ| ≈ 128.
    let q = QuadratureScheme::new(2.0 * PI, 2048, 2.0)?;
    let rows = paralin_sweep(&phi, &q, 2.0, &[3, 4, 5, 6], &mut rng(6))?;
    let rem: Vec<f64> = rows.iter().map(|r| r.remainder).collect();
    let spread = rem.iter().copied().fold(0.0, f64::max) / rem.iter().copied().fold(f64::INFINITY, f64::min);
    let growth = rows[3].main / rows[0].main;
    Ok((
        spread <= 2.0 && growth >= 6.0,
        format!("remainder max/min {spread:.2} (need <= 2), main term growth {growth:.1}x from N = 8 to 64 (need >= 6)"),
        json!({ "rows": rows, "remainder_spread": spread, "main_growth": growth }),
    ))
}

fn quantization() -> Result<Measured> {
    let g = GridSpec::new(4.0 * PI, 256)?;
    let mut r = rng(7);
    let cutoff = ParaCutoff::new(4.0)?;
    let mut defect: f64 = 0.0;
    for _ in 0..20 {
        let amp = r.gen_range(0.1..2.0);
        let x0 = r.gen_range(-3.0..3.0);
        let band = DyadicBand(r.gen_range(-1..5));
        let bump = Field::from_fn(&g, |x: f64| (-(x - x0).powi(2)).exp());
        let a = band_noise(&g, band, &mut r).scale(amp).add(&bump)?;
        defect = defect.max(ta_matrix(&a, &cutoff)?.hermitian_defect());
    }
    let samples = norm_probe_samples(&g, 3.0, 1.0, &mut r);
    let probes = [1, 6].map(|p| choose_m(1.0, p, 3.0, &samples));
    let probes = probes.into_iter().collect::<Result<Vec<_>>>()?;
    let achieved = probes.iter().map(|p| p.achieved()).fold(0.0, f64::max);
    let mut bounds = Vec::new();
    for w in [0.5, 1.0, 2.0] {
        let a = Field::from_fn(&g, |x: f64| 0.8 * (-(x / w).powi(2)).exp());
        for m in [1.0, 4.0, 16.0] {
            bounds.push((w, m, norm_bound(&a, &ParaCutoff::new(m)?, 2.0)?));
        }
    }
    let bound_ok = bounds.iter().all(|b| b.2.holds());
    let passed = defect <= 1e-12 && achieved <= 0.95 && bound_ok;
    Ok((
        passed,
        format!(
            "Hermitian defect {defect:.1e} (tol 1e-12), choose_M norms {} (need <= 0.95), norm bound holds in {}/{} cases",
            probes.iter().map(|p| format!("r={}: M={} {:.3}", p.r, p.chosen_m, p.achieved())).collect::<Vec<_>>().join(", "),
            bounds.iter().filter(|b| b.2.holds()).count(),
            bounds.len()
        ),
        json!({
            "hermitian_defect": defect,
            "probes": probes,
            "bounds": bounds.iter().map(|(w, m, b)| json!({ "width": w, "M": m, "bound": b })).collect::<Vec<_>>(),
        }),
    ))
}

fn modified_energy_comparability() -> Result<Measured> {
    let g = GridSpec::new(4.0 * PI, 256)?;
    let mut r = rng(8);
    let samples = norm_probe_samples(&g, 3.0, 1.0, &mut r);
    let m = [1, 6]
        .iter()
        .map(|&p| choose_m(1.0, p, 3.0, &samples).map(|probe| probe.chosen_m))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let sweep = energy_comparability(&samples[1], 3.0, m, 50, &mut r)?;
    Ok((
        sweep.ratio <= 10.0 && sweep.min_energy >= 0.0,
        format!("c2/c1 = {:.2} over 50 fields at M = {m} (need <= 10), min E^s {:.2e}", sweep.ratio, sweep.min_energy),
        json!(sweep),
    ))
}

fn dispersion_identities() -> Result<Measured> {
    let mut r = rng(9);
    let (mut e_vel, mut e_fd, mut e_phase, mut e_curv) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let h = 1e-5;
    for _ in 0..100 {
        let v: f64 = r.gen_range(-10.0..10.0);
        let p = dispersion_point(v);
        let scale = |x: f64| x.abs().max(1.0);
        e_vel = e_vel.max((group_velocity(p.xi) - v).abs() / scale(v));
        let fd = (dispersion_point(v + h).phase - dispersion_point(v - h).phase) / (2.0 * h);
        e_fd = e_fd.max((fd - p.xi).abs());
        e_phase = e_phase.max((p.phase - packet_phase(v)).abs() / scale(p.phase));
        e_curv = e_curv.max((dispersion_curvature(p.xi) * p.xi + 2.0).abs());
        debug_assert_eq!(p.xi, frequency_for_velocity(v));
    }
    let passed = e_vel <= 1e-12 && e_fd <= 1e-8 && e_phase <= 1e-12 && e_curv <= 1e-12;
    Ok((
        passed,
        format!("max errors: v = a'(xi_v) {e_vel:.1e}, phi' = xi_v {e_fd:.1e}, phi = -2 xi_v {e_phase:.1e}, a'' xi = -2 {e_curv:.1e}"),
        json!({ "velocity": e_vel, "phase_derivative": e_fd, "phase": e_phase, "curvature": e_curv }),
    ))
}

fn resonance_constant() -> Result<Measured> {
    let q1 = q_constant(1.0)?;
    let gap = (q1.re - q_closed_form(1.0)).abs();
    let mut scale_err: f64 = 0.0;
    let mut ratios = Vec::new();
    for xi in [0.5, 2.0, 4.0] {
        let ratio = q_constant(xi)? / q1;
        scale_err = scale_err.max((ratio - Complex::new(xi * xi, 0.0)).norm() / (xi * xi));
        ratios.push((xi, ratio.re));
    }
    let mut conj_err: f64 = 0.0;
    for xi in [1.0, 2.0] {
        conj_err = conj_err.max((q_constant(-xi)? - q_constant(xi)?.conj()).norm());
    }
    let passed = q1.im.abs() <= 1e-6 && gap <= 1e-4 && scale_err <= 1e-3 && conj_err <= 1e-6;
    Ok((
        passed,
        format!(
            "q(1) = {:.7} {:+.1e}i, gap to -(4/3)ln 2 {gap:.1e}, scaling error {scale_err:.1e}, conjugation error {conj_err:.1e}",
            q1.re, q1.im
        ),
        json!({ "q1": [q1.re, q1.im], "closed_form_gap": gap, "ratios": ratios, "scaling_error": scale_err, "conjugation_error": conj_err }),
    ))
}

fn dispersive_decay(shared: &Shared) -> Result<Measured> {
    let study = shared.scattering()?;
    let linear_slope = study.linear_decay.slope_between(5.0, 50.0);
    let sup = study.decay.sup_scaled(1.0, 50.0);
    // t^{1/2}‖φ‖_Y settles from below in the linear flow too; growth means a
    // positive power of t.
    let trend = study.decay.slope_between(5.0, 50.0) + 0.5;
    let ratio: Vec<f64> = study
        .decay
        .rows
        .iter()
        .zip(&study.linear_decay.rows)
        .filter(|(a, _)| a.t >= 1.0)
        .map(|(a, b)| a.scaled / b.scaled)
        .collect();
    let (lo, hi) = ratio.iter().fold((f64::INFINITY, 0.0f64), |(l, h), &x| (l.min(x), h.max(x)));
    let passed = (linear_slope + 0.5).abs() <= 0.1 && sup.is_finite() && trend <= 0.05;
    Ok((
        passed,
        format!(
            "linear Y slope {linear_slope:.3} on [5, 50] (need -0.5 +/- 0.1); nonlinear sup t^1/2 Y = {sup:.3e}, trend t^{trend:.4} (need <= t^0.05), nonlinear/linear in [{lo:.4}, {hi:.4}]"
        ),
        json!({
            "linear_slope": linear_slope,
            "sup_scaled": sup,
            "trend_exponent": trend,
            "growth_fraction": study.decay.growth_fraction(1.0, 50.0),
            "nonlinear_over_linear": [lo, hi],
        }),
    ))
}

fn synthetic_fit() -> Result<(f64, f64)> {
    // Same q(1) as the fit uses for its prediction.
    let q1 = q_constant(1.0)?.re;
    let velocities = vec![-4.5, -4.0];
    let w = 0.3;
    let times: Vec<f64> = (0..5).map(|k| 8.0 * 2f64.powf(k as f64 / 2.0)).collect();
    let mut rec = ProfileRecord::new(DyadicBand(1), velocities.clone());
    for &t in &times {
        let gamma = velocities.iter().map(|&v| Complex::from_polar(w, resonance_rate(q1, v, w) * t.ln())).collect();
        rec.rows.push(ProfileRow { t, gamma, admissible: vec![true; velocities.len()] });
    }
    let fit = fit_scattering(&rec, Some((8.0, 32.0)))?;
    let w_err = fit.fits.iter().map(|f| (f.w_abs - w).abs()).fold(0.0, f64::max);
    let s_err = fit.fits.iter().map(|f| (f.phase_slope_fit - f.phase_slope_pred).abs()).fold(0.0, f64::max);
    Ok((w_err, s_err))
}

fn scattering(shared: &Shared, full: bool) -> Result<Measured> {
    let (w_err, s_err) = synthetic_fit()?;
    let synthetic_ok = w_err <= 1e-10 && s_err <= 1e-10;
    let synthetic = format!("synthetic |W| error {w_err:.1e}, slope error {s_err:.1e} (tol 1e-10)");
    if !full {
        return Ok((synthetic_ok, synthetic, json!({ "synthetic": [w_err, s_err] })));
    }
    let study = shared.scattering()?;
    let (t1, t2) = (PROFILE_TIMES[0], PROFILE_TIMES[4]);
    let mut bands = Vec::new();
    for b in 0..=SCATTERING_BAND.0 {
        let p = study.profiles(DyadicBand(b), &PROFILE_TIMES, Some((t1, t2)))?;
        bands.push((b, p));
    }
    let judged = &bands.last().expect("at least one band").1;
    let drift = modulus_drift(&judged.nonlinear, t1, t2);
    let mut best = judged.fit.fits.clone();
    best.sort_by(|a, b| b.w_abs.total_cmp(&a.w_abs));
    best.truncate(3);
    let ratios: Vec<f64> = best.iter().map(|f| f.phase_slope_fit / f.phase_slope_pred).collect();
    let slopes_ok = ratios.iter().all(|&r| (0.5..=2.0).contains(&r));
    let others = bands[..bands.len() - 1]
        .iter()
        .map(|(b, p)| format!("lambda={} {:.3}", 1 << b, modulus_drift(&p.nonlinear, t1, t2)))
        .collect::<Vec<_>>()
        .join(", ");
    let passed = synthetic_ok && drift <= 0.1 && slopes_ok;
    Ok((
        passed,
        format!(
            "{synthetic}; band lambda={} drift {drift:.3} over t in [8, 32] (tol 0.1; lower bands {others}); fit/pred phase slope at three largest |W|: {} (need 0.5..2)",
            1 << SCATTERING_BAND.0,
            ratios.iter().map(|r| format!("{r:.3}")).collect::<Vec<_>>().join(", ")
        ),
        json!({
            "synthetic": [w_err, s_err],
            "band": SCATTERING_BAND.frequency::<f64>(),
            "modulus_drift": drift,
            "slope_ratios": ratios,
            "bands": bands.iter().map(|(_, p)| p.summary()).collect::<Vec<_>>(),
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lagrange_reproduces_polynomials_away_from_the_seam() {
        let h = 0.1;
        let vals: Vec<f64> = (0..200).map(|j| {
            let x = -10.0 + j as f64 * h;
            x * x * x - 2.0 * x
        }).collect();
        for x in [-3.33, 0.0, 0.05, 4.71] {
            let p = lagrange_periodic(&vals, h, -10.0, x, 10);
            assert!((p - (x * x * x - 2.0 * x)).abs() < 1e-10, "{x}: {p}");
        }
    }

    #[test]
    fn log_log_slope_of_power_law() {
        let pts: Vec<(f64, f64)> = [1.0f64, 2.0, 4.0, 8.0].iter().map(|&x| (x, 3.0 * x.powf(-2.0))).collect();
        assert!((log_log_slope(&pts) + 2.0).abs() < 1e-12);
    }
}
