use super::b0::b0_symbol;
use super::operator::apply_a;
use super::quadrature::QuadratureScheme;
use super::shape::f_shape;
use crate::error::Result;
use crate::paradiff::{apply_ta, ParaCutoff};
use crate::scalar::Real;
use crate::spectral::{apply_multiplier, derivative, Field, FourierMultiplier};

/// Remainder of the paralinearisation
/// `R = A_φ v + T_{B⁰(φ)} v + 2 T_{F(φ_x)} log|D| v`.
///
/// The main terms enter with a minus sign: for a front of constant slope
/// `p`, `A_φ` is the multiplier `-F(p)(c₀ - 2 log|ξ|) = -B⁰ - 2F(p) log|ξ|`,
/// which this sign convention leaves as a zero remainder.
pub fn paralin_residual<T: Real>(
    phi: &Field<T>,
    v: &Field<T>,
    q: &QuadratureScheme<T>,
    cutoff: &ParaCutoff<T>,
) -> Result<Field<T>> {
    let a = apply_a(phi, v, q)?;
    let b0 = b0_symbol(phi, q)?;
    let f = derivative(phi).map(f_shape);
    let log_v = apply_multiplier(v, &FourierMultiplier::log_abs(v.grid()))?;
    let t_b0 = apply_ta(&b0, v, cutoff)?;
    let t_log = apply_ta(&f, &log_v, cutoff)?;
    a.add(&t_b0)?.add(&t_log.scale(T::of(2.0)))
}
