use serde::Serialize;

use super::field::Field;
use super::multiplier::{apply_multiplier, derivative, FourierMultiplier};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Discrete `H^s` norm `(2L Σ_k (1 + ξ_k²)^s |c_k|²)^{1/2}`.
pub fn sobolev_norm<T: Real>(f: &Field<T>, s: T) -> T {
    let g = f.grid();
    let sum: T = f
        .spectrum()
        .iter()
        .zip(g.wavenumbers())
        .map(|(c, &xi)| (T::one() + xi * xi).powf(s) * c.norm_sqr())
        .sum();
    (T::of(2.0) * g.half_length() * sum).sqrt()
}

/// Checked variant: `s` must lie in `[-4, 10]`.
pub fn sobolev_norm_checked<T: Real>(f: &Field<T>, s: T) -> Result<T> {
    if s < T::of(-4.0) || s > T::of(10.0) {
        return Err(Error::invalid(format!("Sobolev index {s} outside [-4, 10]")));
    }
    Ok(sobolev_norm(f, s))
}

/// `‖|D|^{3/4-δ} f‖_∞ + ‖|D|^{2+δ} f‖_∞`.
pub fn y_norm<T: Real>(f: &Field<T>, delta: T) -> Result<T> {
    if !(delta > T::zero() && delta < T::of(0.25)) {
        return Err(Error::invalid(format!("decay exponent δ = {delta} outside (0, 1/4)")));
    }
    let g = f.grid();
    let low = apply_multiplier(f, &FourierMultiplier::abs_pow(g, T::of(0.75) - delta))?;
    let high = apply_multiplier(f, &FourierMultiplier::abs_pow(g, T::of(2.0) + delta))?;
    Ok(low.max_abs() + high.max_abs())
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct XNorm<T> {
    pub value: T,
    pub sobolev_part: T,
    pub weighted_part: T,
    /// More than 1% of the L² mass of `f` sits in `|x| > 0.9 L`, where the
    /// sawtooth weight no longer represents `x`.
    pub boundary_warning: bool,
}

/// `‖f‖_{H^s} + ‖L ∂_x f‖_{L²}` with `L = x + 2t + 2t log|D|`, using the
/// centred grid coordinate as the `x` weight.
pub fn x_norm<T: Real>(f: &Field<T>, t: T, s: T) -> Result<XNorm<T>> {
    let g = f.grid();
    let fx = derivative(f);
    let log_fx = apply_multiplier(&fx, &FourierMultiplier::log_abs(g))?;
    let two_t = T::of(2.0) * t;
    let weighted: Vec<T> = g
        .points()
        .into_iter()
        .zip(fx.values().iter().zip(log_fx.values()))
        .map(|(x, (&d, &ld))| (x + two_t) * d + two_t * ld)
        .collect();
    let weighted = Field::new(g, weighted)?;
    let sobolev_part = sobolev_norm(f, s);
    let weighted_part = weighted.l2_norm();
    Ok(XNorm {
        value: sobolev_part + weighted_part,
        sobolev_part,
        weighted_part,
        boundary_warning: boundary_mass_fraction(f, T::of(0.9)) > T::of(0.01),
    })
}

/// Fraction of `‖f‖²_{L²}` located in `|x| > edge · L`.
pub fn boundary_mass_fraction<T: Real>(f: &Field<T>, edge: T) -> T {
    let g = f.grid();
    let cut = edge * g.half_length();
    let (mut outer, mut total) = (T::zero(), T::zero());
    for (x, &v) in g.points().into_iter().zip(f.values()) {
        total += v * v;
        if x.abs() > cut {
            outer += v * v;
        }
    }
    if total > T::zero() {
        outer / total
    } else {
        T::zero()
    }
}
