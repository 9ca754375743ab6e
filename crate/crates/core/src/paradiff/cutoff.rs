use serde::Serialize;

use crate::error::{Error, Result};
use crate::profile::smooth_step;
use crate::scalar::Real;

/// Frequency cutoffs of the `M`-dependent quantization.
///
/// * `chi` is even, equal to 1 on `[-1/20, 1/20]` and to 0 outside `[-1/10, 1/10]`.
/// * `chi_tilde(θ₁, θ₂) = chi(θ₁² / (M² + θ₂²))`.
/// * the high pass `P_{>M}` is 0 for `|ξ| ≤ M/2` and 1 for `|ξ| ≥ M`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ParaCutoff<T> {
    m: T,
}

impl<T: Real> ParaCutoff<T> {
    pub fn new(m: T) -> Result<Self> {
        if !(m > T::zero()) || !m.is_finite() {
            return Err(Error::invalid(format!("cutoff frequency M must be positive, got {m}")));
        }
        Ok(Self { m })
    }

    #[inline]
    pub fn m(&self) -> T {
        self.m
    }

    #[inline]
    pub fn chi(theta: T) -> T {
        let t = theta.abs().to_f64_lossy();
        T::of(1.0 - smooth_step((t - 0.05) / 0.05))
    }

    #[inline]
    pub fn chi_tilde(&self, theta1: T, theta2: T) -> T {
        Self::chi(theta1 * theta1 / (self.m * self.m + theta2 * theta2))
    }

    /// Symbol of `P_{>M}`.
    #[inline]
    pub fn high_pass(&self, xi: T) -> T {
        let half = self.m.to_f64_lossy() * 0.5;
        T::of(smooth_step((xi.abs().to_f64_lossy() - half) / half))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_values() {
        assert_eq!(ParaCutoff::<f64>::chi(0.0), 1.0);
        assert_eq!(ParaCutoff::<f64>::chi(0.05), 1.0);
        assert_eq!(ParaCutoff::<f64>::chi(-0.05), 1.0);
        assert_eq!(ParaCutoff::<f64>::chi(0.1), 0.0);
        assert_eq!(ParaCutoff::<f64>::chi(0.2), 0.0);
        assert!((ParaCutoff::<f64>::chi(0.075) - 0.5).abs() < 1e-15);
        let c = ParaCutoff::new(8.0).unwrap();
        assert_eq!(c.high_pass(2.0), 0.0);
        assert_eq!(c.high_pass(4.0), 0.0);
        assert_eq!(c.high_pass(-8.0), 1.0);
        assert!(c.high_pass(6.0) > 0.0 && c.high_pass(6.0) < 1.0);
        assert!(ParaCutoff::new(0.0).is_err());
    }

    #[test]
    fn chi_tilde_is_one_near_the_diagonal() {
        // |ξ - η|² / (M² + |ξ + η|²) ≤ 1/20 is what makes χ̃ equal to 1
        let c = ParaCutoff::new(4.0).unwrap();
        for i in -40..=40 {
            for j in -40..=40 {
                let (xi, eta) = (i as f64 * 0.5, j as f64 * 0.5);
                let ratio = (xi - eta).powi(2) / (16.0 + (xi + eta).powi(2));
                if ratio <= 0.05 {
                    assert_eq!(c.chi_tilde(xi - eta, xi + eta), 1.0);
                }
                if ratio >= 0.1 {
                    assert_eq!(c.chi_tilde(xi - eta, xi + eta), 0.0);
                }
            }
        }
    }
}
