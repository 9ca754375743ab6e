//! The renormalised pairing `⟨pv |y|^{-1}, e^{-iy}⟩`.

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::integrate::{adaptive, richardson};

#[derive(Clone, Debug, Serialize)]
pub struct PvConstant {
    /// Extrapolated limit from the primary schedule.
    pub value: f64,
    /// Extrapolated limit from the shifted schedule.
    pub alternate: f64,
    pub epsilons: Vec<f64>,
    pub alternate_epsilons: Vec<f64>,
    pub richardson_order: u32,
}

impl PvConstant {
    pub fn spread(&self) -> f64 {
        (self.value - self.alternate).abs()
    }
}

const TOL: f64 = 1e-15;

/// `∫_1^∞ cos(y) / y dy`, after two integrations by parts:
/// `cos 1 - sin 1 - 2 ∫_1^∞ cos(y) / y³ dy`. The remaining integral is
/// summed period by period up to `2π · 1600`; the neglected tail is below `1e-11`.
fn cosine_tail() -> Result<f64> {
    let period = 2.0 * std::f64::consts::PI;
    let mut total = adaptive(|y| y.cos() / (y * y * y), 1.0, period, TOL, TOL)?;
    for k in 1..1600 {
        let a = period * k as f64;
        total += adaptive(|y| y.cos() / (y * y * y), a, a + period, TOL, TOL)?;
    }
    Ok(1f64.cos() - 1f64.sin() - 2.0 * total)
}

/// `∫_ε^1 cos(y) / y dy` in the variable `u = ln y`.
fn cosine_head(eps: f64) -> Result<f64> {
    adaptive(|u| u.exp().cos(), eps.ln(), 0.0, TOL, TOL)
}

/// `c(ε) = ∫_{|y|>ε} cos(y)/|y| dy + 2 ln ε`, which differs from its limit by `O(ε²)`.
pub fn pv_truncated(eps: f64) -> Result<f64> {
    Ok(2.0 * (cosine_head(eps)? + cosine_tail()? + eps.ln()))
}

/// Split form `∫_{|y|<1} (cos y - 1)/|y| dy + ∫_{|y|≥1} cos y/|y| dy`.
pub fn pv_split_form() -> Result<f64> {
    let inner = adaptive(|y: f64| if y == 0.0 { 0.0 } else { (y.cos() - 1.0) / y }, 0.0, 1.0, TOL, TOL)?;
    Ok(2.0 * (inner + cosine_tail()?))
}

fn extrapolate(epsilons: &[f64]) -> Result<f64> {
    let values = epsilons.iter().map(|&e| pv_truncated(e)).collect::<Result<Vec<_>>>()?;
    Ok(richardson(&values, epsilons[1] / epsilons[0], 2))
}

/// Computes the constant from two ε-schedules and checks they agree.
pub fn pv_unit_constant() -> Result<PvConstant> {
    let epsilons = vec![1e-2, 1e-3, 1e-4];
    let alternate_epsilons = vec![2e-2, 2e-3, 2e-4];
    let value = extrapolate(&epsilons)?;
    let alternate = extrapolate(&alternate_epsilons)?;
    let c = PvConstant { value, alternate, epsilons, alternate_epsilons, richardson_order: 2 };
    if c.spread() > 1e-6 {
        return Err(Error::numerical(format!("pv constant schedules disagree by {:e}", c.spread())));
    }
    Ok(c)
}

/// Cached value of [`pv_unit_constant`].
pub fn pv_unit_value() -> Result<f64> {
    static VALUE: OnceLock<std::result::Result<f64, String>> = OnceLock::new();
    VALUE
        .get_or_init(|| pv_unit_constant().map(|c| c.value).map_err(|e| e.to_string()))
        .clone()
        .map_err(Error::NumericalFailure)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedules_agree_and_value_is_negative() {
        let c = pv_unit_constant().unwrap();
        assert!(c.spread() < 1e-8, "spread {:e}", c.spread());
        assert!(c.value < 0.0);
    }

    #[test]
    fn split_form_is_the_same_pairing() {
        let c = pv_unit_value().unwrap();
        assert!((pv_split_form().unwrap() - c).abs() < 1e-10);
    }

    #[test]
    fn equals_minus_twice_euler_gamma() {
        const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
        assert!((pv_unit_value().unwrap() + 2.0 * EULER_GAMMA).abs() < 1e-9);
    }
}
