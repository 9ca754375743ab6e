//! Smooth dyadic partition of frequency space.
//!
//! `P_λ` has symbol `B(|ξ|/(√2 λ)) - B(√2 |ξ|/λ)` where `B` is 1 on
//! `[0, 1]`, 0 beyond `√2`, with the shared smooth transition in between.
//! The symbol equals 1 on `λ ≤ |ξ| ≤ √2 λ` and vanishes outside
//! `(λ/√2, 2λ)`; consecutive bands telescope.

use num_complex::Complex;

use super::field::Field;
use super::grid::GridSpec;
use crate::profile::smooth_step;
use crate::scalar::Real;

/// Dyadic frequency `λ = 2^k`, identified by its exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub struct DyadicBand(pub i32);

impl DyadicBand {
    pub fn frequency<T: Real>(self) -> T {
        T::of(2f64.powi(self.0))
    }

    /// Band whose frequency is the largest power of two not above `lambda`.
    pub fn containing(lambda: f64) -> Self {
        DyadicBand(lambda.log2().floor() as i32)
    }
}

fn low_pass(r: f64) -> f64 {
    1.0 - smooth_step((r - 1.0) / (std::f64::consts::SQRT_2 - 1.0))
}

/// Symbol of `P_λ` at `ξ`.
pub fn lp_symbol<T: Real>(xi: T, band: DyadicBand) -> T {
    let a = xi.abs().to_f64_lossy();
    let lambda = 2f64.powi(band.0);
    let s2 = std::f64::consts::SQRT_2;
    T::of(low_pass(a / (s2 * lambda)) - low_pass(s2 * a / lambda))
}

/// Symbol of the low-pass `P_{≤λ}` (1 for `|ξ| ≤ √2λ`, 0 beyond `2λ`).
pub fn low_pass_symbol<T: Real>(xi: T, band: DyadicBand) -> T {
    let lambda = 2f64.powi(band.0);
    T::of(low_pass(xi.abs().to_f64_lossy() / (std::f64::consts::SQRT_2 * lambda)))
}

/// Band range whose projections telescope to the identity on every
/// nonzero mode of `grid`.
pub fn bands<T: Real>(grid: &GridSpec<T>) -> Vec<DyadicBand> {
    let lo = grid.xi_step().to_f64_lossy().log2().floor() as i32;
    let hi = (grid.nyquist().to_f64_lossy() / std::f64::consts::SQRT_2).log2().ceil() as i32;
    (lo..=hi).map(DyadicBand).collect()
}

#[derive(Clone, Debug)]
pub struct LpProjection<T: Real> {
    pub field: Field<T>,
    /// Set when the band lies entirely above the grid's Nyquist frequency.
    pub above_nyquist: bool,
}

/// Smooth band-pass `P_λ f`.
pub fn lp_project<T: Real>(f: &Field<T>, band: DyadicBand) -> LpProjection<T> {
    let g = f.grid();
    let lower_edge = band.frequency::<f64>() / std::f64::consts::SQRT_2;
    if lower_edge >= g.nyquist().to_f64_lossy() {
        return LpProjection { field: Field::zeros(g), above_nyquist: true };
    }
    let spec: Vec<Complex<T>> =
        f.spectrum().iter().zip(g.wavenumbers()).map(|(c, &xi)| c * lp_symbol(xi, band)).collect();
    LpProjection { field: Field::from_spectrum(g, &spec), above_nyquist: false }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn band_center_passes_and_far_band_blocks() {
        let g = GridSpec::new(PI, 256).unwrap();
        let f = Field::from_fn(&g, |x: f64| (4.0 * x).cos());
        let p = lp_project(&f, DyadicBand(2));
        assert!(!p.above_nyquist);
        assert!(p.field.sub(&f).unwrap().max_abs() < 1e-14);
        let q = lp_project(&f, DyadicBand(6));
        assert!(q.field.max_abs() < 1e-15);
    }

    #[test]
    fn above_nyquist_is_flagged() {
        let g = GridSpec::new(PI, 16).unwrap();
        let f = Field::from_fn(&g, |x: f64| x.cos());
        let p = lp_project(&f, DyadicBand(5));
        assert!(p.above_nyquist);
        assert_eq!(p.field.max_abs(), 0.0);
    }

    #[test]
    fn symbols_telescope() {
        let g = GridSpec::new(10.0, 512).unwrap();
        let bs = bands(&g);
        for &xi in g.wavenumbers() {
            let s: f64 = bs.iter().map(|&b| lp_symbol(xi, b)).sum();
            if xi == 0.0 {
                assert_eq!(s, 0.0);
            } else {
                assert!((s - 1.0).abs() < 1e-14, "xi = {xi}, sum = {s}");
            }
        }
    }
}
