use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::quadrature::QuadratureScheme;
use super::shape::f_shape;
use super::shifts::accumulate;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectral::{
    apply_multiplier, common_grid, derivative, spectral_shift, transfer_spectrum, Field, FourierMultiplier, GridSpec,
};

/// Denominator of a difference quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quotient {
    /// `(h(x + y) - h(x)) / y`
    Signed,
    /// `(h(x + y) - h(x)) / |y|`
    Absolute,
}

pub fn diff_quotient<T: Real>(f: &Field<T>, y: T, kind: Quotient) -> Result<Field<T>> {
    if y == T::zero() || !y.is_finite() {
        return Err(Error::invalid(format!("difference quotient needs a finite nonzero step, got {y}")));
    }
    let denom = match kind {
        Quotient::Signed => y,
        Quotient::Absolute => y.abs(),
    };
    spectral_shift(f, y).zip_map(f, |a, b| (a - b) / denom)
}

/// Oversampling of the physical-space products in the nonlocal term.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Oversampling {
    /// Products on the native grid.
    #[default]
    None,
    /// Products on a grid with twice the points; the result is truncated back.
    Double,
}

impl Oversampling {
    pub fn factor(self) -> usize {
        match self {
            Oversampling::None => 1,
            Oversampling::Double => 2,
        }
    }

    pub fn from_factor(factor: usize) -> Result<Self> {
        match factor {
            1 => Ok(Oversampling::None),
            2 => Ok(Oversampling::Double),
            _ => Err(Error::invalid(format!("oversampling factor must be 1 or 2, got {factor}"))),
        }
    }
}

/// `A_φ v = ∫ F(δ^y φ) |δ|^y v dy` on the nodes of `q`, products on the native grid.
pub fn apply_a<T: Real>(phi: &Field<T>, v: &Field<T>, q: &QuadratureScheme<T>) -> Result<Field<T>> {
    apply_a_with(phi, v, q, Oversampling::None)
}

/// [`apply_a`] with a choice of product grid.
pub fn apply_a_with<T: Real>(
    phi: &Field<T>,
    v: &Field<T>,
    q: &QuadratureScheme<T>,
    oversampling: Oversampling,
) -> Result<Field<T>> {
    let grid = common_grid(phi, v, "apply_a")?;
    let work = match oversampling {
        Oversampling::None => grid.clone(),
        Oversampling::Double => grid.with_points(2 * grid.len())?,
    };
    // φ in the real part, v in the imaginary part: one transform per node.
    let (phi_hat, v_hat) = if oversampling == Oversampling::None {
        (phi.spectrum().to_vec(), v.spectrum().to_vec())
    } else {
        (transfer_spectrum(grid, phi.spectrum(), &work), transfer_spectrum(grid, v.spectrum(), &work))
    };
    let i = Complex::new(T::zero(), T::one());
    let packed: Vec<Complex<T>> = phi_hat.iter().zip(&v_hat).map(|(a, b)| a + i * b).collect();
    let base = work.synthesize(&packed);

    let nodes = q.nodes();
    let ys: Vec<T> = nodes.iter().map(|&(y, _)| y).collect();
    let sum = accumulate(
        &work,
        &ys,
        1,
        |tw, buf| {
            for ((b, p), t) in buf.iter_mut().zip(&packed).zip(tw) {
                *b = p * t;
            }
        },
        |idx, shifted, acc| {
            let (y, w) = nodes[idx];
            let inv_y = T::one() / y;
            let w_abs = w / y.abs();
            for ((a, s), b) in acc.iter_mut().zip(shifted).zip(&base) {
                *a += w_abs * f_shape((s.re - b.re) * inv_y) * (s.im - b.im);
            }
        },
    );
    finish(grid, &work, sum, "apply_a")
}

/// Brings a physical-space sum on `work` back to a field on `grid`.
pub(crate) fn finish<T: Real>(grid: &GridSpec<T>, work: &GridSpec<T>, sum: Vec<T>, what: &str) -> Result<Field<T>> {
    if let Some(j) = sum.iter().position(|v| !v.is_finite()) {
        return Err(Error::numerical(format!("{what}: non-finite value at sample {j}")));
    }
    if work.len() == grid.len() {
        return Field::new(grid, sum);
    }
    let spec = transfer_spectrum(work, &work.analyze(&sum), grid);
    Ok(Field::from_spectrum(grid, &spec))
}

/// Nonlinear part of the time derivative, `A_φ φ_x`.
pub fn nonlinear_term<T: Real>(phi: &Field<T>, q: &QuadratureScheme<T>, oversampling: Oversampling) -> Result<Field<T>> {
    apply_a_with(phi, &derivative(phi), q, oversampling)
}

/// Linear part of the time derivative, `2 log|D| ∂_x φ`.
pub fn linear_term<T: Real>(phi: &Field<T>) -> Field<T> {
    let m = FourierMultiplier::log_derivative(phi.grid(), T::of(2.0));
    apply_multiplier(phi, &m).expect("multiplier built on the field's grid")
}

/// `∂_t φ = A_φ φ_x + 2 log|D| ∂_x φ`.
pub fn rhs<T: Real>(phi: &Field<T>, q: &QuadratureScheme<T>) -> Result<Field<T>> {
    nonlinear_term(phi, q, Oversampling::None)?.add(&linear_term(phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn quotients() {
        let g = GridSpec::new(PI, 64).unwrap();
        let f = Field::from_fn(&g, |x: f64| x.sin());
        let d = diff_quotient(&f, 1e-3, Quotient::Signed).unwrap();
        let c = Field::from_fn(&g, |x: f64| x.cos());
        assert!(d.sub(&c).unwrap().max_abs() < 1e-3);
        assert!(diff_quotient(&Field::constant(&g, 2.0), 0.3, Quotient::Signed).unwrap().max_abs() < 1e-15);
        for y in [0.37, -0.37] {
            let s = diff_quotient(&f, y, Quotient::Signed).unwrap();
            let a = diff_quotient(&f, y, Quotient::Absolute).unwrap();
            assert!(a.sub(&s.scale(y.signum())).unwrap().max_abs() < 1e-15);
        }
        assert!(diff_quotient(&f, 0.0, Quotient::Signed).is_err());
    }

    #[test]
    fn vanishes_for_flat_fronts() {
        let g = GridSpec::new(8.0, 128).unwrap();
        let q = QuadratureScheme::default_for(&g);
        let v = Field::from_fn(&g, |x: f64| (-x * x).exp());
        // v leaks into the φ channel at rounding level, F squares it
        assert!(apply_a(&Field::zeros(&g), &v, &q).unwrap().max_abs() < 1e-28);
        assert!(apply_a(&Field::constant(&g, 3.0), &v, &q).unwrap().max_abs() < 1e-14);
        assert_eq!(rhs(&Field::zeros(&g), &q).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn oversampling_changes_little_for_resolved_data() {
        let g = GridSpec::new(16.0, 512).unwrap();
        let q = QuadratureScheme::new(8.0, 128, 2.0).unwrap();
        let phi = Field::from_fn(&g, |x: f64| 0.5 * (-x * x).exp());
        let a = nonlinear_term(&phi, &q, Oversampling::None).unwrap();
        let b = nonlinear_term(&phi, &q, Oversampling::Double).unwrap();
        let d = a.rel_l2_distance(&b).unwrap();
        assert!(d < 1e-8, "{d:e}");
    }

    #[test]
    fn cubic_scaling_of_nonlinear_part() {
        let g = GridSpec::new(16.0, 256).unwrap();
        let q = QuadratureScheme::new(8.0, 128, 2.0).unwrap();
        let phi = Field::from_fn(&g, |x: f64| (-x * x).exp());
        let r2 = nonlinear_term(&phi.scale(1e-2), &q, Oversampling::None).unwrap().scale(1e6);
        let r3 = nonlinear_term(&phi.scale(1e-3), &q, Oversampling::None).unwrap().scale(1e9);
        assert!(r2.rel_l2_distance(&r3).unwrap() < 1e-2);
    }
}
