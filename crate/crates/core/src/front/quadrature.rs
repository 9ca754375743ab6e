use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectral::GridSpec;

/// Symmetric graded rule for integrals over `y ∈ [-Y_max, Y_max]`.
///
/// Each half line is mapped by `y = Y_max s^g`, `s ∈ [0, 1]`, and split into
/// `N_y / 2` equal cells in `s`. The node sits at the cell midpoint in `s`
/// and carries the exact length of its image cell, so the weights of a half
/// line sum to `Y_max` for every grading and the rule is second order for
/// integrands that are smooth on each closed half line. `y = 0` is never a node.
#[derive(Clone, Debug, Serialize)]
pub struct QuadratureScheme<T> {
    y_max: T,
    grading: T,
    /// Positive nodes in increasing order; node `-y` carries the same weight.
    positive: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> QuadratureScheme<T> {
    pub fn new(y_max: T, num_nodes: usize, grading: T) -> Result<Self> {
        if !(y_max > T::zero()) || !y_max.is_finite() {
            return Err(Error::invalid(format!("Y_max must be positive, got {y_max}")));
        }
        if num_nodes < 16 || !num_nodes.is_multiple_of(2) {
            return Err(Error::invalid(format!("node count must be even and >= 16, got {num_nodes}")));
        }
        if !(grading >= T::one()) || !grading.is_finite() {
            return Err(Error::invalid(format!("grading must be >= 1, got {grading}")));
        }
        let n = num_nodes / 2;
        let nf = T::of_usize(n);
        let edge = |j: usize| y_max * (T::of_usize(j) / nf).powf(grading);
        let half = T::of(0.5);
        let positive = (0..n).map(|j| y_max * ((T::of_usize(j) + half) / nf).powf(grading)).collect();
        let weights = (0..n).map(|j| edge(j + 1) - edge(j)).collect();
        Ok(Self { y_max, grading, positive, weights })
    }

    /// `Y_max = L/2`, `N_y = 4 sqrt(N)` rounded to an even count (at least 16), `g = 2`.
    pub fn default_for(grid: &GridSpec<T>) -> Self {
        let n = ((4.0 * (grid.len() as f64).sqrt() / 2.0).round() as usize * 2).max(16);
        Self::new(grid.half_length() * T::of(0.5), n, T::of(2.0)).expect("default parameters are valid")
    }

    pub fn y_max(&self) -> T {
        self.y_max
    }

    pub fn grading(&self) -> T {
        self.grading
    }

    pub fn num_nodes(&self) -> usize {
        2 * self.positive.len()
    }

    pub fn positive_nodes(&self) -> &[T] {
        &self.positive
    }

    pub fn positive_weights(&self) -> &[T] {
        &self.weights
    }

    /// All `(y, w)` pairs, negative nodes first, in increasing `y`.
    pub fn nodes(&self) -> Vec<(T, T)> {
        let neg = self.positive.iter().zip(&self.weights).rev().map(|(&y, &w)| (-y, w));
        let pos = self.positive.iter().zip(&self.weights).map(|(&y, &w)| (y, w));
        neg.chain(pos).collect()
    }

    /// `Σ_j w_j (f(y_j) + f(-y_j))` over the positive nodes.
    pub fn integrate(&self, f: impl Fn(T) -> T) -> T {
        self.positive.iter().zip(&self.weights).fold(T::zero(), |acc, (&y, &w)| acc + w * (f(y) + f(-y)))
    }

    /// CSV `y,w`, one row per node.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(w, "y,w")?;
        for (y, wt) in self.nodes() {
            writeln!(w, "{:e},{:e}", y.to_f64_lossy(), wt.to_f64_lossy())?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_grading_is_midpoint() {
        let q = QuadratureScheme::new(4.0, 16, 1.0).unwrap();
        let expected: Vec<f64> = (0..8).map(|j| 0.25 + 0.5 * j as f64).collect();
        for (a, b) in q.positive_nodes().iter().zip(&expected) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!(q.positive_weights().iter().all(|&w| (w - 0.5).abs() < 1e-15));
    }

    #[test]
    fn symmetric_and_exact_on_constants() {
        for g in [1.0, 2.0, 2.7, 4.0] {
            let q = QuadratureScheme::new(7.5, 64, g).unwrap();
            let half: f64 = q.positive_weights().iter().sum();
            assert!((half - 7.5).abs() < 1e-12);
            assert_eq!(q.integrate(f64::signum), 0.0);
            assert!(q.nodes().iter().all(|&(y, _)| y != 0.0 && y.abs() <= 7.5));
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(QuadratureScheme::new(0.0, 32, 2.0).is_err());
        assert!(QuadratureScheme::new(1.0, 15, 2.0).is_err());
        assert!(QuadratureScheme::new(1.0, 8, 2.0).is_err());
        assert!(QuadratureScheme::new(1.0, 32, 0.5).is_err());
    }

    #[test]
    fn lorentzian_against_arctan() {
        let q = QuadratureScheme::new(50.0, 400, 2.0).unwrap();
        let v = q.integrate(|y| 1.0 / (1.0 + y * y));
        assert!((v - 2.0 * 50f64.atan()).abs() < 1e-3);
    }
}
