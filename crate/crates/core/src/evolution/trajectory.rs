use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::SolverConfig;
use super::stepper::Stepper;
use crate::error::{Error, Result};
use crate::front::linear_term;
use crate::scalar::Real;
use crate::spectral::io::{read_field, write_field};
use crate::spectral::{sobolev_norm, x_norm, y_norm, Field, GridSpec};

/// `∫ φ² dx`, conserved by the flow.
pub fn mass<T: Real>(phi: &Field<T>) -> T {
    let n = phi.l2_norm();
    n * n
}

/// Diagnostics of one state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Monitor {
    pub t: f64,
    pub mass: f64,
    pub hs: f64,
    pub y: f64,
    pub x: f64,
    pub rhs_norm: f64,
}

impl Monitor {
    fn measure<T: Real>(phi: &Field<T>, nonlinear: &Field<T>, t: T, cfg: &SolverConfig) -> Result<Self> {
        let s = T::of(cfg.monitor_s);
        let rhs = nonlinear.add(&linear_term(phi))?;
        Ok(Self {
            t: t.to_f64_lossy(),
            mass: mass(phi).to_f64_lossy(),
            hs: sobolev_norm(phi, s).to_f64_lossy(),
            y: y_norm(phi, T::of(cfg.monitor_delta))?.to_f64_lossy(),
            x: x_norm(phi, t, s)?.value.to_f64_lossy(),
            rhs_norm: rhs.l2_norm().to_f64_lossy(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct Snapshot<T: Real> {
    pub step: usize,
    pub time: T,
    pub field: Field<T>,
}

/// Stored states plus one monitor row per step (the initial state included).
#[derive(Clone, Debug)]
pub struct Trajectory<T: Real> {
    pub grid: GridSpec<T>,
    pub config: SolverConfig,
    pub snapshots: Vec<Snapshot<T>>,
    pub monitors: Vec<Monitor>,
}

impl<T: Real> Trajectory<T> {
    pub fn steps_taken(&self) -> usize {
        self.monitors.len().saturating_sub(1)
    }

    pub fn last(&self) -> &Snapshot<T> {
        self.snapshots.last().expect("trajectory holds the initial state")
    }

    pub fn times(&self) -> Vec<T> {
        self.snapshots.iter().map(|s| s.time).collect()
    }

    /// Largest `|mass(t)/mass(0) - 1|` over the monitored steps.
    pub fn max_mass_drift(&self) -> f64 {
        let m0 = self.monitors[0].mass;
        self.monitors.iter().map(|m| (m.mass / m0 - 1.0).abs()).fold(0.0, f64::max)
    }
}

/// Evolution stopped early; the states up to the failure are kept.
#[derive(Debug)]
pub struct BlowUp<T: Real> {
    pub time: f64,
    pub reason: String,
    pub partial: Trajectory<T>,
}

#[derive(Debug, thiserror::Error)]
pub enum EvolveError<T: Real> {
    #[error(transparent)]
    Setup(#[from] Error),
    #[error("blow-up at t = {}: {}", .0.time, .0.reason)]
    BlowUp(Box<BlowUp<T>>),
}

impl<T: Real> EvolveError<T> {
    pub fn partial(&self) -> Option<&Trajectory<T>> {
        match self {
            EvolveError::BlowUp(b) => Some(&b.partial),
            EvolveError::Setup(_) => None,
        }
    }
}

impl<T: Real> From<EvolveError<T>> for Error {
    fn from(e: EvolveError<T>) -> Self {
        match e {
            EvolveError::Setup(e) => e,
            b @ EvolveError::BlowUp(_) => Error::numerical(b.to_string()),
        }
    }
}

/// Runs the IF-RK4 scheme from `phi0` at `t = 0` to `config.t_final`.
///
/// Blow-up (a non-finite state or `H^s` above the threshold) returns the
/// partial trajectory inside the error.
pub fn evolve<T: Real>(phi0: &Field<T>, config: &SolverConfig) -> std::result::Result<Trajectory<T>, EvolveError<T>> {
    let stepper = Stepper::new(phi0.grid(), config)?;
    let steps = config.steps()?;
    let dt = config.dt;
    let mut traj = Trajectory {
        grid: phi0.grid().clone(),
        config: config.clone(),
        snapshots: vec![Snapshot { step: 0, time: T::zero(), field: phi0.clone() }],
        monitors: Vec::with_capacity(steps + 1),
    };
    let mut phi = phi0.clone();
    let mut step = 0;
    loop {
        let t = T::of(step as f64 * dt);
        let fail = |traj: Trajectory<T>, reason: String| {
            EvolveError::BlowUp(Box::new(BlowUp { time: t.to_f64_lossy(), reason, partial: traj }))
        };
        let k1 = match stepper.nonlinear(&phi) {
            Ok(k) => k,
            Err(e) if e.is_numerical() => return Err(fail(traj, e.to_string())),
            Err(e) => return Err(e.into()),
        };
        let monitor = match Monitor::measure(&phi, &k1, t, config) {
            Ok(m) => m,
            Err(e) => return Err(fail(traj, e.to_string())),
        };
        let hs = monitor.hs;
        traj.monitors.push(monitor);
        if !hs.is_finite() || hs > config.blowup_threshold {
            return Err(fail(traj, format!("H^{} norm {hs:e} exceeds {:e}", config.monitor_s, config.blowup_threshold)));
        }
        if step == steps {
            break;
        }
        phi = match stepper.step_with(&phi, &k1) {
            Ok(p) => p,
            Err(e) => return Err(fail(traj, e.to_string())),
        };
        step += 1;
        if step % config.record_stride == 0 || step == steps {
            traj.snapshots.push(Snapshot { step, time: T::of(step as f64 * dt), field: phi.clone() });
        }
    }
    Ok(traj)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SnapshotEntry {
    pub step: usize,
    pub time: f64,
    pub file: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryManifest {
    #[serde(rename = "L")]
    pub half_length: f64,
    #[serde(rename = "N")]
    pub num_points: usize,
    pub config: SolverConfig,
    pub snapshots: Vec<SnapshotEntry>,
    pub monitors: String,
}

/// Writes `manifest.json`, `snapshots/step_XXXXXX.bin` (plus sidecars) and `monitors.csv` into `dir`.
pub fn write_trajectory<T: Real>(dir: &Path, traj: &Trajectory<T>) -> Result<TrajectoryManifest> {
    let snap_dir = dir.join("snapshots");
    fs::create_dir_all(&snap_dir)?;
    let mut entries = Vec::with_capacity(traj.snapshots.len());
    for s in &traj.snapshots {
        let file = format!("snapshots/step_{:06}.bin", s.step);
        write_field(&dir.join(&file), &s.field, s.time)?;
        entries.push(SnapshotEntry { step: s.step, time: s.time.to_f64_lossy(), file });
    }
    write_monitors(&dir.join("monitors.csv"), &traj.monitors)?;
    let manifest = TrajectoryManifest {
        half_length: traj.grid.half_length().to_f64_lossy(),
        num_points: traj.grid.len(),
        config: traj.config.clone(),
        snapshots: entries,
        monitors: "monitors.csv".into(),
    };
    fs::write(dir.join("manifest.json"), serde_json::to_vec_pretty(&manifest)?)?;
    Ok(manifest)
}

pub fn write_monitors(path: &Path, monitors: &[Monitor]) -> Result<()> {
    let mut w = BufWriter::new(fs::File::create(path)?);
    writeln!(w, "t,mass,Hs,Y,X,rhs_norm")?;
    for m in monitors {
        writeln!(w, "{:e},{:e},{:e},{:e},{:e},{:e}", m.t, m.mass, m.hs, m.y, m.x, m.rhs_norm)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads the snapshots listed in `dir/manifest.json`. Monitors are not reloaded.
pub fn read_trajectory<T: Real>(dir: &Path) -> Result<(TrajectoryManifest, Vec<Snapshot<T>>)> {
    let manifest: TrajectoryManifest = serde_json::from_slice(&fs::read(dir.join("manifest.json"))?)?;
    let mut snaps = Vec::with_capacity(manifest.snapshots.len());
    for e in &manifest.snapshots {
        let (field, time) = read_field(&dir.join(&e.file))?;
        snaps.push(Snapshot { step: e.step, time, field });
    }
    Ok((manifest, snaps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn setup() -> (GridSpec<f64>, Field<f64>) {
        let g = GridSpec::new(4.0 * PI, 128).unwrap();
        let phi = Field::from_fn(&g, |x| 0.2 * (-x * x).exp());
        (g, phi)
    }

    #[test]
    fn record_layout() {
        let (_, phi) = setup();
        let cfg = SolverConfig { dt: 0.01, t_final: 0.05, record_stride: 2, ..Default::default() };
        let traj = evolve(&phi, &cfg).unwrap();
        assert_eq!(traj.monitors.len(), 6);
        assert_eq!(traj.steps_taken(), 5);
        let steps: Vec<usize> = traj.snapshots.iter().map(|s| s.step).collect();
        assert_eq!(steps, vec![0, 2, 4, 5]);
        assert!(traj.times().windows(2).all(|w| w[1] > w[0]));
        assert!(traj.max_mass_drift() < 1e-8);
    }

    #[test]
    fn blow_up_keeps_partial_trajectory() {
        let (_, phi) = setup();
        let cfg = SolverConfig { dt: 0.01, t_final: 0.05, blowup_threshold: 1e-3, ..Default::default() };
        match evolve(&phi, &cfg) {
            Err(EvolveError::BlowUp(b)) => {
                assert_eq!(b.partial.monitors.len(), 1);
                assert_eq!(b.time, 0.0);
                assert!(Error::from(EvolveError::BlowUp(b)).is_numerical());
            }
            other => panic!("expected blow-up, got {:?}", other.map(|t| t.steps_taken())),
        }
    }

    #[test]
    fn store_round_trip() {
        let (_, phi) = setup();
        let cfg = SolverConfig { dt: 0.01, t_final: 0.03, record_stride: 1, ..Default::default() };
        let traj = evolve(&phi, &cfg).unwrap();
        let dir = tempfile::tempdir().unwrap();
        write_trajectory(dir.path(), &traj).unwrap();
        let (manifest, snaps) = read_trajectory::<f64>(dir.path()).unwrap();
        assert_eq!(manifest.snapshots.len(), 4);
        assert_eq!(manifest.config, cfg);
        for (a, b) in snaps.iter().zip(&traj.snapshots) {
            assert_eq!(a.field.values(), b.field.values());
            assert_eq!(a.time, b.time);
        }
        let csv = fs::read_to_string(dir.path().join("monitors.csv")).unwrap();
        assert_eq!(csv.lines().count(), 5);
        assert!(csv.starts_with("t,mass,Hs,Y,X,rhs_norm"));
    }
}
