use serde::Serialize;

use super::field::Field;
use super::littlewood_paley::{bands, lp_project, DyadicBand};
use super::norms::sobolev_norm;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Positive, slowly varying dyadic sequence dominating the band norms of a field.
#[derive(Clone, Debug, Serialize)]
pub struct FrequencyEnvelope<T> {
    pub bands: Vec<DyadicBand>,
    pub values: Vec<T>,
    pub delta: T,
    /// Band norms `‖P_k f‖_{H^s}` the envelope was built from.
    pub band_norms: Vec<T>,
}

impl<T: Real> FrequencyEnvelope<T> {
    /// Largest violation of `c_j ≤ 2^{δ|j-k|} c_k` over all pairs, as a ratio (≤ 1 when admissible).
    pub fn max_slowness_ratio(&self) -> T {
        let mut worst = T::zero();
        for (a, (&bj, &cj)) in self.bands.iter().zip(&self.values).enumerate() {
            for (&bk, &ck) in self.bands[a..].iter().zip(&self.values[a..]) {
                let d = T::of(f64::from((bj.0 - bk.0).abs()));
                let allowed = T::of(2.0).powf(self.delta * d);
                worst = worst.max(cj / (ck * allowed)).max(ck / (cj * allowed));
            }
        }
        worst
    }
}

/// Minimal admissible envelope `c_k = max_j 2^{-δ|j-k|} (‖P_j f‖_{H^s} + floor)`
/// with floor `1e-14 ‖f‖_{H^s}` (the smallest positive normal number for `f = 0`).
pub fn frequency_envelope<T: Real>(f: &Field<T>, s: T, delta: T) -> Result<FrequencyEnvelope<T>> {
    if !(delta > T::zero() && delta < T::one()) {
        return Err(Error::invalid(format!("envelope exponent {delta} outside (0, 1)")));
    }
    let bs = bands(f.grid());
    let band_norms: Vec<T> = bs.iter().map(|&b| sobolev_norm(&lp_project(f, b).field, s)).collect();
    let total = sobolev_norm(f, s);
    let floor = if total > T::zero() { T::of(1e-14) * total } else { T::min_positive_value() };
    let values = bs
        .iter()
        .map(|bk| {
            bs.iter()
                .zip(&band_norms)
                .map(|(bj, &nj)| {
                    let d = T::of(f64::from((bj.0 - bk.0).abs()));
                    T::of(2.0).powf(-delta * d) * (nj + floor)
                })
                .fold(T::zero(), T::max)
        })
        .collect();
    Ok(FrequencyEnvelope { bands: bs, values, delta, band_norms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::GridSpec;
    use std::f64::consts::PI;

    #[test]
    fn zero_field_sits_on_floor() {
        let g = GridSpec::new(PI, 64).unwrap();
        let e = frequency_envelope(&Field::zeros(&g), 1.0, 0.5).unwrap();
        assert!(e.values.iter().all(|&c| c == f64::MIN_POSITIVE));
    }

    #[test]
    fn single_band_profile() {
        // mode 4 sits at the centre of band k = 2 and nowhere else
        let g = GridSpec::new(PI, 256).unwrap();
        let f = Field::from_fn(&g, |x: f64| (4.0 * x).cos());
        let s = 1.5;
        let delta = 0.25;
        let e = frequency_envelope(&f, s, delta).unwrap();
        let total = sobolev_norm(&f, s);
        for (b, &c) in e.bands.iter().zip(&e.values) {
            let expected = 2f64.powf(-delta * f64::from((b.0 - 2).abs())) * total;
            assert!((c - expected).abs() <= 1e-12 * total, "band {b:?}: {c} vs {expected}");
        }
        assert!(frequency_envelope(&f, s, 1.0).is_err());
    }
}
