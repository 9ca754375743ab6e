use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::front::{Oversampling, QuadratureScheme};
use crate::scalar::Real;
use crate::spectral::GridSpec;

/// Parameters of the `y` rule; `None` fields fall back to the grid default.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureParams {
    pub y_max: Option<f64>,
    pub num_nodes: Option<usize>,
    pub grading: Option<f64>,
}

impl QuadratureParams {
    pub fn build<T: Real>(&self, grid: &GridSpec<T>) -> Result<QuadratureScheme<T>> {
        let d = QuadratureScheme::default_for(grid);
        QuadratureScheme::new(
            self.y_max.map(T::of).unwrap_or(d.y_max()),
            self.num_nodes.unwrap_or(d.num_nodes()),
            self.grading.map(T::of).unwrap_or(d.grading()),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverConfig {
    pub dt: f64,
    pub t_final: f64,
    /// Steps between stored snapshots; the initial and final states are always stored.
    pub record_stride: usize,
    pub quadrature: QuadratureParams,
    pub oversampling: usize,
    /// Drop the nonlocal term and run the linear flow only.
    pub linear_only: bool,
    /// Sobolev index of the `H^s` and `X` monitors.
    pub monitor_s: f64,
    /// Exponent `δ` of the `Y` monitor.
    pub monitor_delta: f64,
    /// `H^s` level reported as blow-up.
    pub blowup_threshold: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            dt: 1e-2,
            t_final: 1.0,
            record_stride: 10,
            quadrature: QuadratureParams::default(),
            oversampling: 2,
            linear_only: false,
            monitor_s: 3.0,
            monitor_delta: 0.1,
            blowup_threshold: 1e6,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::invalid(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.t_final >= self.dt) || !self.t_final.is_finite() {
            return Err(Error::invalid(format!("t_final = {} must be at least dt = {}", self.t_final, self.dt)));
        }
        self.steps()?;
        if self.record_stride == 0 {
            return Err(Error::invalid("record_stride must be at least 1"));
        }
        Oversampling::from_factor(self.oversampling)?;
        if !(self.monitor_delta > 0.0 && self.monitor_delta < 0.25) {
            return Err(Error::invalid(format!("monitor_delta must lie in (0, 1/4), got {}", self.monitor_delta)));
        }
        if !(self.blowup_threshold > 0.0) {
            return Err(Error::invalid("blowup_threshold must be positive"));
        }
        Ok(())
    }

    /// Number of steps; `t_final` must be a whole multiple of `dt`.
    pub fn steps(&self) -> Result<usize> {
        let ratio = self.t_final / self.dt;
        let steps = ratio.round();
        if (ratio - steps).abs() > 1e-9 * ratio.max(1.0) {
            return Err(Error::invalid(format!("t_final = {} is not a multiple of dt = {}", self.t_final, self.dt)));
        }
        Ok(steps as usize)
    }

    pub fn oversampling(&self) -> Oversampling {
        Oversampling::from_factor(self.oversampling).unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(SolverConfig::default().validate().is_ok());
        let bad = |f: fn(&mut SolverConfig)| {
            let mut c = SolverConfig::default();
            f(&mut c);
            c.validate().is_err()
        };
        assert!(bad(|c| c.dt = 0.0));
        assert!(bad(|c| c.t_final = 0.001));
        assert!(bad(|c| c.t_final = 1.005 + 1e-4));
        assert!(bad(|c| c.oversampling = 3));
        assert!(bad(|c| c.record_stride = 0));
        assert_eq!(SolverConfig { t_final: 5.0, ..Default::default() }.steps().unwrap(), 500);
    }
}
