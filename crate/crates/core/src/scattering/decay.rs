use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::evolution::Snapshot;
use crate::scalar::Real;
use crate::spectral::y_norm;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayRow {
    pub t: f64,
    pub y: f64,
    /// `t^{1/2} ‖φ‖_Y`.
    pub scaled: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayReport {
    pub delta: f64,
    pub rows: Vec<DecayRow>,
    /// Log-log slope of `‖φ‖_Y` over the last decade of times.
    pub slope: f64,
}

impl DecayReport {
    /// Least-squares slope of `ln ‖φ‖_Y` against `ln t` over `[t1, t2]`; 0 if undefined.
    pub fn slope_between(&self, t1: f64, t2: f64) -> f64 {
        let pts: Vec<(f64, f64)> = self
            .rows
            .iter()
            .filter(|r| r.t >= t1 && r.t <= t2 && r.t > 0.0 && r.y > 0.0)
            .map(|r| (r.t.ln(), r.y.ln()))
            .collect();
        if pts.len() < 2 {
            return 0.0;
        }
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
        if sxx > 0.0 {
            sxy / sxx
        } else {
            0.0
        }
    }

    /// `sup t^{1/2} ‖φ‖_Y` over `[t1, t2]`.
    pub fn sup_scaled(&self, t1: f64, t2: f64) -> f64 {
        self.rows.iter().filter(|r| r.t >= t1 && r.t <= t2).map(|r| r.scaled).fold(0.0, f64::max)
    }

    /// CSV with header `t,Y,scaled`.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(std::fs::File::create(path)?);
        writeln!(w, "t,Y,scaled")?;
        for r in &self.rows {
            writeln!(w, "{:e},{:e},{:e}", r.t, r.y, r.scaled)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Fraction of consecutive samples in `[t1, t2]` along which `t^{1/2} ‖φ‖_Y` increases.
    pub fn growth_fraction(&self, t1: f64, t2: f64) -> f64 {
        let s: Vec<f64> = self.rows.iter().filter(|r| r.t >= t1 && r.t <= t2).map(|r| r.scaled).collect();
        if s.len() < 2 {
            return 0.0;
        }
        s.windows(2).filter(|w| w[1] > w[0]).count() as f64 / (s.len() - 1) as f64
    }
}

/// Table of `(t, ‖φ‖_Y, t^{1/2}‖φ‖_Y)` over the snapshots of a run.
pub fn decay_report<T: Real>(snapshots: &[Snapshot<T>], delta: f64) -> Result<DecayReport> {
    let rows = snapshots
        .iter()
        .map(|s| {
            let t = s.time.to_f64_lossy();
            let y = y_norm(&s.field, T::of(delta))?.to_f64_lossy();
            Ok(DecayRow { t, y, scaled: t.sqrt() * y })
        })
        .collect::<Result<Vec<_>>>()?;
    let t_last = rows.last().map(|r| r.t).unwrap_or(0.0);
    let mut report = DecayReport { delta, rows, slope: 0.0 };
    report.slope = report.slope_between(t_last / 10.0, t_last);
    Ok(report)
}
