use serde::Serialize;

use super::cutoff::ParaCutoff;
use super::quantization::apply_ta;
use crate::error::Result;
use crate::front::f_shape;
use crate::scalar::Real;
use crate::spectral::{apply_multiplier, common_grid, derivative, Field, FourierMultiplier};

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ModifiedEnergy<T> {
    /// `E^{(s)}(v) = ∫ g · T_{1-F(φ_x)} g dx` with `g = T_{(1-F(φ_x))^s} |D|^s v`.
    pub top: T,
    /// `E^{(0)}(v)`.
    pub base: T,
}

impl<T: Real> ModifiedEnergy<T> {
    /// `E^s = E^{(s)} + E^{(0)}`.
    pub fn total(&self) -> T {
        self.top + self.base
    }
}

fn energy_level<T: Real>(coef: &Field<T>, phi_x: &Field<T>, v: &Field<T>, s: T, c: &ParaCutoff<T>) -> Result<T> {
    let weight = phi_x.map(|p| (T::one() - f_shape(p)).powf(s));
    let dv = apply_multiplier(v, &FourierMultiplier::abs_pow(v.grid(), s))?;
    let g = apply_ta(&weight, &dv, c)?;
    let tg = apply_ta(coef, &g, c)?;
    g.inner(&tg)
}

pub fn modified_energy<T: Real>(phi: &Field<T>, v: &Field<T>, s: T, c: &ParaCutoff<T>) -> Result<ModifiedEnergy<T>> {
    common_grid(phi, v, "modified_energy")?;
    let phi_x = derivative(phi);
    let coef = phi_x.map(|p| T::one() - f_shape(p));
    Ok(ModifiedEnergy {
        top: energy_level(&coef, &phi_x, v, s, c)?,
        base: energy_level(&coef, &phi_x, v, T::zero(), c)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::GridSpec;

    #[test]
    fn flat_front_collapses_to_a_multiplier() {
        let g = GridSpec::new(8.0, 128).unwrap();
        let c = ParaCutoff::new(2.0).unwrap();
        let v = Field::from_fn(&g, |x: f64| (-x * x).exp() * (3.0 * x).cos());
        let s = 1.5;
        let e = modified_energy(&Field::zeros(&g), &v, s, &c).unwrap();
        let expected: f64 = v
            .spectrum()
            .iter()
            .zip(g.wavenumbers())
            .enumerate()
            .filter(|(k, _)| *k != g.nyquist_index())
            .map(|(_, (vh, &xi))| (xi.abs().powf(2.0 * s) + 1.0) * c.high_pass(xi).powi(6) * vh.norm_sqr())
            .sum::<f64>()
            * 2.0
            * g.half_length();
        assert!((e.total() - expected).abs() < 1e-12 * expected);
        assert_eq!(modified_energy(&Field::zeros(&g), &Field::zeros(&g), s, &c).unwrap().total(), 0.0);
    }
}
