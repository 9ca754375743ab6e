use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectral::{boundary_mass_fraction, spectral_shift, Field};

/// Fraction of `L²` mass allowed beyond `0.9 L` after the transform.
const SUPPORT_TOLERANCE: f64 = 1e-6;

/// Maps a solution value at time `t` to the value of the rescaled solution
/// `ψ(t', x') = κ φ(t'/κ, x'/κ - 2 log κ · t'/κ)` at `t' = κ t`.
///
/// The output lives on the grid with half length `κ L` and the same point
/// count, so `ψ` at `x'_j` is `κ φ(x_j - 2 log κ · t)`.
pub fn scaling_transform<T: Real>(phi: &Field<T>, t: T, kappa: T) -> Result<(Field<T>, T)> {
    if !(kappa > T::zero()) || !kappa.is_finite() {
        return Err(Error::invalid(format!("scale factor must be positive, got {kappa}")));
    }
    let shift = T::of(2.0) * kappa.ln() * t;
    let moved = if shift == T::zero() { phi.clone() } else { spectral_shift(phi, -shift) };
    let spill = boundary_mass_fraction(&moved, T::of(0.9));
    if spill > T::of(SUPPORT_TOLERANCE) {
        return Err(Error::invalid(format!(
            "rescaled profile does not fit the grid: {:e} of the mass lies beyond 0.9 L",
            spill.to_f64_lossy()
        )));
    }
    let grid = phi.grid().rescaled(kappa)?;
    let values = moved.values().iter().map(|&v| kappa * v).collect();
    Ok((Field::new(&grid, values)?, kappa * t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::GridSpec;
    use std::f64::consts::PI;

    #[test]
    fn pure_dilation_at_time_zero() {
        let g = GridSpec::new(4.0 * PI, 128).unwrap();
        let phi = Field::from_fn(&g, |x: f64| (-x * x).exp());
        let (psi, t) = scaling_transform(&phi, 0.0, 2.0).unwrap();
        assert_eq!(t, 0.0);
        assert_eq!(psi.grid().half_length(), 8.0 * PI);
        for (&x, &v) in psi.grid().points().iter().zip(psi.values()) {
            assert!((v - 2.0 * (-(x / 2.0) * (x / 2.0)).exp()).abs() < 1e-14);
        }
    }

    #[test]
    fn shift_grows_with_time() {
        let g = GridSpec::new(4.0 * PI, 256).unwrap();
        let phi = Field::from_fn(&g, |x: f64| (-x * x).exp());
        let kappa = 2.0f64;
        let (psi, tp) = scaling_transform(&phi, 1.5, kappa).unwrap();
        assert!((tp - 3.0).abs() < 1e-15);
        let c = 2.0 * kappa.ln() * 1.5;
        for (&x, &v) in psi.grid().points().iter().zip(psi.values()) {
            let u = x / kappa - c;
            assert!((v - kappa * (-u * u).exp()).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_overflow_and_bad_factor() {
        let g = GridSpec::new(4.0 * PI, 128).unwrap();
        let phi = Field::from_fn(&g, |x: f64| (-x * x).exp());
        assert!(scaling_transform(&phi, 0.0, 0.0).is_err());
        assert!(scaling_transform(&phi, 0.0, -1.0).is_err());
        assert!(scaling_transform(&phi, 5.0, 3.0).is_err());
    }
}
