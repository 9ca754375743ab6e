use num_complex::Complex;

use crate::scalar::Real;
use crate::spectral::{FourierMultiplier, GridSpec};

/// Exact flow of `∂_t φ = 2 log|D| ∂_x φ` over `dt`: symbol `e^{2iξ log|ξ| dt}`.
/// The zero and Nyquist modes are left unchanged.
pub fn linear_propagator<T: Real>(grid: &GridSpec<T>, dt: T) -> FourierMultiplier<T> {
    let generator = FourierMultiplier::log_derivative(grid, T::of(2.0));
    let samples = generator.samples().iter().map(|g| Complex::from_polar(T::one(), g.im * dt)).collect();
    FourierMultiplier::from_samples(grid, format!("exp({dt}·2log|D|d/dx)"), samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn unit_modulus_and_fixed_points() {
        let g = GridSpec::new(PI, 64).unwrap();
        let id = linear_propagator(&g, 0.0);
        assert!(id.samples().iter().all(|s| *s == Complex::new(1.0, 0.0)));
        let p = linear_propagator(&g, 0.37);
        assert!(p.samples().iter().all(|s| (s.norm() - 1.0).abs() < 1e-15));
        let q = linear_propagator(&g, 1.3);
        for (a, k) in q.samples().iter().zip(g.wavenumbers()) {
            let theta = 2.6 * k * if *k == 0.0 { 0.0 } else { k.abs().ln() };
            assert!((a - Complex::from_polar(1.0, theta)).norm() < 1e-15 * theta.abs().max(1.0) || *k == -g.nyquist());
        }
        for m in [1, -1] {
            let k = g.index_of_mode(m).unwrap();
            assert_eq!(p.samples()[k], Complex::new(1.0, 0.0));
        }
        assert!(p.is_hermitian_compatible(0.0));
    }
}
