mod common;

use common::{bumps, field};
use num_complex::Complex;
use proptest::prelude::*;
use sqg_front::spectral::{
    apply_multiplier_with_residue, bands, frequency_envelope, lp_project, sobolev_norm, spectral_shift, FourierMultiplier,
};
use sqg_front::{Field64, Grid};
use std::f64::consts::PI;

fn grid() -> Grid {
    Grid::new(8.0 * PI, 256).unwrap()
}

/// The Nyquist mode has no partner, so real shifts cannot be undone on it.
fn without_nyquist(f: &Field64) -> Field64 {
    let g = f.grid();
    let mut spec = f.spectrum().to_vec();
    spec[g.nyquist_index()] = Complex::new(0.0, 0.0);
    Field64::from_spectrum(g, &spec)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn transform_round_trip(b in bumps(2.0, 6.0)) {
        let g = grid();
        let f = field(&g, &b);
        let back: Vec<f64> = g.synthesize(&g.analyze(f.values())).iter().map(|c| c.re).collect();
        let back = Field64::new(&g, back).unwrap();
        prop_assert!(back.rel_l2_distance(&f).unwrap() < 1e-12);
    }

    #[test]
    fn shift_then_unshift(b in bumps(2.0, 6.0), y in -20.0f64..20.0) {
        let g = grid();
        let f = without_nyquist(&field(&g, &b));
        let there_and_back = spectral_shift(&spectral_shift(&f, y), -y);
        prop_assert!(there_and_back.rel_l2_distance(&f).unwrap() < 1e-12);
    }

    #[test]
    fn bands_partition_nonzero_modes(b in bumps(2.0, 6.0)) {
        let g = grid();
        let f = field(&g, &b);
        let mut sum = Field64::zeros(&g);
        for band in bands(&g) {
            sum = sum.add(&lp_project(&f, band).field).unwrap();
        }
        let mean_free = f.map(|v| v - f.mean());
        prop_assert!(sum.sub(&mean_free).unwrap().l2_norm() <= 1e-10 * f.l2_norm());
    }

    #[test]
    fn sobolev_norm_increases_with_s(b in bumps(2.0, 6.0), s in 0.0f64..4.0, ds in 0.01f64..2.0) {
        let g = grid();
        let f = field(&g, &b);
        let f = f.scale(1.0 / f.l2_norm());
        prop_assert!(sobolev_norm(&f, s + ds) >= sobolev_norm(&f, s));
    }

    #[test]
    fn envelope_is_slow_and_dominates(b in bumps(2.0, 6.0), delta in 0.05f64..1.0) {
        let g = grid();
        let f = field(&g, &b);
        let env = frequency_envelope(&f, 2.0, delta).unwrap();
        for (j, &cj) in env.values.iter().enumerate() {
            prop_assert!(cj > 0.0);
            prop_assert!(cj >= env.band_norms[j]);
            for (k, &ck) in env.values.iter().enumerate() {
                let allowed = 2f64.powf(delta * (j as f64 - k as f64).abs());
                prop_assert!(cj / ck <= allowed * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn hermitian_symbols_keep_fields_real(b in bumps(2.0, 6.0), c in -3.0f64..3.0, p in 0.5f64..3.0) {
        let g = grid();
        let f = field(&g, &b);
        let even = FourierMultiplier::even(&g, "even", |xi: f64| xi.abs().powf(p));
        let odd = FourierMultiplier::odd(&g, "odd", |xi: f64| c * xi);
        let samples = even.samples().iter().zip(odd.samples()).map(|(a, b)| a + b).collect();
        let m = FourierMultiplier::from_samples(&g, "even + odd", samples);
        prop_assert!(m.is_hermitian_compatible(0.0));
        let (out, residue) = apply_multiplier_with_residue(&f, &m).unwrap();
        prop_assert!(residue < 1e-12, "residue {residue:e}, output norm {:e}", out.l2_norm());
    }
}
