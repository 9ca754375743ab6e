use crate::scalar::Real;

/// `F(s) = 1 - (1 + s²)^{-1/2}`, written as `s² / (r (1 + r))` with
/// `r = sqrt(1 + s²)` so small arguments keep full relative accuracy.
#[inline]
pub fn f_shape<T: Real>(s: T) -> T {
    let s2 = s * s;
    let r = (T::one() + s2).sqrt();
    s2 / (r * (T::one() + r))
}

/// `F'(s) = s (1 + s²)^{-3/2}`.
#[inline]
pub fn f_shape_deriv<T: Real>(s: T) -> T {
    let r2 = T::one() + s * s;
    s / (r2 * r2.sqrt())
}
