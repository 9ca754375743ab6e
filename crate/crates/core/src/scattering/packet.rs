use num_complex::Complex;

use super::dispersion::{dispersion_point, frequency_for_velocity, group_velocity, packet_phase, DispersionPoint};
use crate::error::{Error, Result};
use crate::profile::unit_bump;
use crate::scalar::Real;
use crate::spectral::{ComplexField, DyadicBand, GridSpec};

/// `u^v = a''(ξ_v)^{-1/2} χ(y) e^{itφ(x/t)}`, `y = (x - vt)/(t a''(ξ_v))^{1/2}`,
/// with `χ` the unit-mass bump supported in `|y| < 1`.
#[derive(Clone, Debug)]
pub struct WavePacket<T: Real> {
    pub point: DispersionPoint,
    pub t: f64,
    pub center: f64,
    pub width: f64,
    /// Band whose `I_λ = [λ, 2λ)` contains `|ξ_v|`.
    pub band: DyadicBand,
    pub field: ComplexField<T>,
}

/// Velocity interval `J_λ = a'(I_λ)` for `I_λ = [λ, 2λ)` on the negative axis.
pub fn velocity_interval(band: DyadicBand) -> (f64, f64) {
    let lambda: f64 = band.frequency();
    (group_velocity(2.0 * lambda), group_velocity(lambda))
}

/// `count` velocities at the midpoints of a uniform partition of `J_λ`.
pub fn band_velocities(band: DyadicBand, count: usize) -> Vec<f64> {
    let (lo, hi) = velocity_interval(band);
    let step = (hi - lo) / count as f64;
    (0..count).map(|i| lo + (i as f64 + 0.5) * step).collect()
}

/// Admissible region: `v ∈ J_λ` and `t ≥ 8/λ`.
pub fn in_admissible_region(band: DyadicBand, t: f64, v: f64) -> bool {
    let (lo, hi) = velocity_interval(band);
    let lambda: f64 = band.frequency();
    t >= 8.0 / lambda && v >= lo && v <= hi
}

pub fn build_packet<T: Real>(v: f64, t: f64, grid: &GridSpec<T>) -> Result<WavePacket<T>> {
    if !(t >= 1.0) || !t.is_finite() {
        return Err(Error::invalid(format!("packet time must be at least 1, got {t}")));
    }
    if !v.is_finite() {
        return Err(Error::invalid("packet velocity must be finite"));
    }
    let point = dispersion_point(v);
    let width = (t * point.a2).sqrt();
    let center = v * t;
    let half = grid.half_length().to_f64_lossy();
    if center.abs() + width > 0.9 * half {
        return Err(Error::invalid(format!(
            "packet at x = {center:.3} with half-width {width:.3} does not fit in |x| <= {:.3}",
            0.9 * half
        )));
    }
    let amp = point.a2.powf(-0.5);
    let field = ComplexField::from_fn(grid, |x| {
        let x = x.to_f64_lossy();
        let y = (x - center) / width;
        if y.abs() >= 1.0 {
            return Complex::new(T::zero(), T::zero());
        }
        let z = Complex::from_polar(amp * unit_bump(y), t * packet_phase(x / t));
        Complex::new(T::of(z.re), T::of(z.im))
    });
    let band = DyadicBand::containing(frequency_for_velocity(v).abs());
    Ok(WavePacket { point, t, center, width, band, field })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn bump_mass_and_center() {
        let g = GridSpec::new(64.0 * PI, 4096).unwrap();
        let p = build_packet(-2.5, 64.0, &g).unwrap();
        let dx = g.spacing();
        let mass: f64 = g.points().iter().map(|&x| unit_bump((x - p.center) / p.width)).sum::<f64>() * dx / p.width;
        assert!((mass - 1.0).abs() < 1e-10, "{mass}");
        let (j, _) = p
            .field
            .values()
            .iter()
            .enumerate()
            .fold((0, -1.0), |b, (j, z)| if z.norm() > b.1 { (j, z.norm()) } else { b });
        assert!((g.point(j) - p.center).abs() <= dx);
        assert_eq!(p.band, DyadicBand(0));
    }

    #[test]
    fn velocity_partition() {
        let band = DyadicBand(0);
        let (lo, hi) = velocity_interval(band);
        assert!((hi - lo - 2.0 * 2f64.ln()).abs() < 1e-14);
        assert_eq!(hi, -2.0);
        let vs = band_velocities(band, 16);
        assert_eq!(vs.len(), 16);
        assert!(vs.iter().all(|&v| in_admissible_region(band, 8.0, v)));
        assert!(!in_admissible_region(band, 7.9, vs[0]));
    }

    #[test]
    fn rejects_overflow_and_early_times() {
        let g = GridSpec::new(8.0 * PI, 256).unwrap();
        assert!(build_packet(-2.0, 100.0, &g).is_err());
        assert!(build_packet(-2.0, 0.5, &g).is_err());
    }
}
