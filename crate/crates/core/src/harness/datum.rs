use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::DatumSpec;
use crate::error::{Error, Result};
use crate::spectral::{lp_symbol, DyadicBand, Field, GridSpec};

/// Generator used for every random quantity in the harness.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Real field whose spectrum is `P_λ` times independent uniform coefficients,
/// normalised to unit `L²` norm. Zero if the band misses the grid.
pub fn band_noise(grid: &GridSpec<f64>, band: DyadicBand, rng: &mut ChaCha8Rng) -> Field<f64> {
    let n = grid.len();
    let mut spec = vec![Complex::new(0.0, 0.0); n];
    for k in 1..n / 2 {
        let w = lp_symbol(grid.wavenumbers()[k], band);
        let c = Complex::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
        if w != 0.0 {
            spec[k] = c * w;
            spec[n - k] = spec[k].conj();
        }
    }
    let f = Field::from_spectrum(grid, &spec);
    let norm = f.l2_norm();
    if norm > 0.0 {
        f.scale(1.0 / norm)
    } else {
        f
    }
}

pub fn build_datum(spec: &DatumSpec, grid: &GridSpec<f64>) -> Result<Field<f64>> {
    match *spec {
        DatumSpec::Zero => Ok(Field::zeros(grid)),
        DatumSpec::Gaussian { amplitude, sigma, center } => {
            Ok(Field::from_fn(grid, |x| amplitude * (-(x - center).powi(2) / (2.0 * sigma * sigma)).exp()))
        }
        DatumSpec::Mode { k, amplitude } => {
            let m = k / grid.xi_step();
            if (m - m.round()).abs() > 1e-9 || m.abs() >= (grid.len() / 2) as f64 {
                return Err(Error::invalid(format!("mode wavenumber {k} is not a resolved lattice wavenumber")));
            }
            Ok(Field::from_fn(grid, |x| amplitude * (k * x).cos()))
        }
        DatumSpec::Noise { band, amplitude, seed } => {
            let f = band_noise(grid, DyadicBand(band), &mut rng(seed));
            let peak = f.max_abs();
            if peak == 0.0 {
                return Err(Error::invalid(format!("band {band} has no modes on this grid")));
            }
            Ok(f.scale(amplitude / peak))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn families() {
        let g = GridSpec::new(PI, 64).unwrap();
        assert_eq!(build_datum(&DatumSpec::Zero, &g).unwrap().max_abs(), 0.0);
        let m = build_datum(&DatumSpec::Mode { k: 2.0, amplitude: 0.5 }, &g).unwrap();
        assert!((m.values()[0] - 0.5).abs() < 1e-15);
        assert!(build_datum(&DatumSpec::Mode { k: 2.5, amplitude: 1.0 }, &g).is_err());
        let gauss = build_datum(&DatumSpec::Gaussian { amplitude: 2.0, sigma: 0.5, center: 0.0 }, &g).unwrap();
        assert_eq!(gauss.max_abs(), 2.0);
    }

    #[test]
    fn noise_is_reproducible_and_band_limited() {
        let g = GridSpec::new(4.0 * PI, 256).unwrap();
        let spec = DatumSpec::Noise { band: 2, amplitude: 0.3, seed: 11 };
        let a = build_datum(&spec, &g).unwrap();
        assert_eq!(a.values(), build_datum(&spec, &g).unwrap().values());
        assert!((a.max_abs() - 0.3).abs() < 1e-15);
        for (c, xi) in a.spectrum().iter().zip(g.wavenumbers()) {
            if xi.abs() <= 4.0 / 2f64.sqrt() || xi.abs() >= 8.0 {
                assert!(c.norm() < 1e-15);
            }
        }
        let other = build_datum(&DatumSpec::Noise { band: 2, amplitude: 0.3, seed: 12 }, &g).unwrap();
        assert_ne!(a.values(), other.values());
    }
}
