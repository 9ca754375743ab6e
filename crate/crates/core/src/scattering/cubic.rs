use std::f64::consts::PI;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::front::shifts::accumulate;
use crate::front::QuadratureScheme;
use crate::integrate::gauss_legendre;
use crate::scalar::Real;
use crate::spectral::{ComplexField, Field};

/// `Q(φ) = (1/3) ∫ sgn(y) (δ^y φ)³ dy` on the nodes of `q`.
pub fn cubic_q<T: Real>(phi: &Field<T>, q: &QuadratureScheme<T>) -> Result<Field<T>> {
    let g = phi.grid();
    let spec = phi.spectrum();
    let base = phi.values();
    let nodes = q.nodes();
    let ys: Vec<T> = nodes.iter().map(|&(y, _)| y).collect();
    let third = T::one() / T::of(3.0);
    let sum = accumulate(
        g,
        &ys,
        1,
        |tw, buf| {
            for ((b, c), t) in buf.iter_mut().zip(spec).zip(tw) {
                *b = c * t;
            }
        },
        |idx, shifted, acc| {
            let (y, w) = nodes[idx];
            let inv_y = T::one() / y;
            let c = third * w * y.signum();
            for ((a, s), &b) in acc.iter_mut().zip(shifted).zip(base) {
                let d = (s.re - b) * inv_y;
                *a += c * d * d * d;
            }
        },
    );
    if sum.iter().any(|v| !v.is_finite()) {
        return Err(Error::numerical("cubic form produced a non-finite value"));
    }
    Field::new(g, sum)
}

/// Complex version `(1/3) ∫ sgn(y) |δ^y u|² δ^y u dy`.
pub fn cubic_q_complex<T: Real>(u: &ComplexField<T>, q: &QuadratureScheme<T>) -> Result<ComplexField<T>> {
    let g = u.grid();
    let n = g.len();
    let spec = u.spectrum();
    let base = u.values();
    let nodes = q.nodes();
    let ys: Vec<T> = nodes.iter().map(|&(y, _)| y).collect();
    let third = T::one() / T::of(3.0);
    let sum = accumulate(
        g,
        &ys,
        2,
        |tw, buf| {
            for ((b, c), t) in buf.iter_mut().zip(&spec).zip(tw) {
                *b = c * t;
            }
        },
        |idx, shifted, acc| {
            let (y, w) = nodes[idx];
            let inv_y = T::one() / y;
            let c = third * w * y.signum();
            let (re, im) = acc.split_at_mut(n);
            for j in 0..n {
                let d = (shifted[j] - base[j]) * inv_y;
                let z = d * d.norm_sqr() * c;
                re[j] += z.re;
                im[j] += z.im;
            }
        },
    );
    let values: Vec<Complex<T>> = (0..n).map(|j| Complex::new(sum[j], sum[n + j])).collect();
    if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::numerical("cubic form produced a non-finite value"));
    }
    ComplexField::new(g, values)
}

/// Periods covered by the longer tail; the shorter one uses half as many.
const TAIL_PERIODS: usize = 1600;
const POINTS_PER_PERIOD: usize = 16;

/// `q(ξ) = (1/3) ∫ sgn(y) |b|² b dy` with `b = (e^{iyξ} - 1)/y`.
///
/// Both half lines are integrated period by period with Gauss–Legendre
/// panels out to `|y| ≈ 10⁴/|ξ|`; the result is compared with the
/// integral truncated at half that length.
pub fn q_constant(xi: f64) -> Result<Complex<f64>> {
    if xi == 0.0 || !xi.is_finite() {
        return Err(Error::invalid(format!("q is defined for finite nonzero ξ, got {xi}")));
    }
    let period = 2.0 * PI / xi.abs();
    let (gx, gw) = gauss_legendre(POINTS_PER_PERIOD);
    let integrand = |y: f64| -> Complex<f64> {
        let b = (Complex::from_polar(1.0, y * xi) - 1.0) / y;
        b * b.norm_sqr() * y.signum() / 3.0
    };
    let panel = |k: usize, sign: f64| -> Complex<f64> {
        let (a, h) = (k as f64 * period, 0.5 * period);
        gx.iter().zip(&gw).map(|(&x, &w)| integrand(sign * (a + h * (x + 1.0))) * (w * h)).sum()
    };
    let mut short = Complex::new(0.0, 0.0);
    let mut long = Complex::new(0.0, 0.0);
    for k in 0..TAIL_PERIODS {
        let pair = panel(k, 1.0) + panel(k, -1.0);
        long += pair;
        if k < TAIL_PERIODS / 2 {
            short += pair;
        }
    }
    let diff = (long - short).norm();
    if !(diff <= 1e-6 * long.norm().max(xi * xi)) {
        return Err(Error::numerical(format!("q({xi}) tail not converged: change {diff:e}")));
    }
    Ok(long)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::GridSpec;

    #[test]
    fn unit_value_matches_closed_form() {
        let q = q_constant(1.0).unwrap();
        assert!(q.im.abs() < 1e-6);
        assert!((q.re + 4.0 / 3.0 * 2f64.ln()).abs() < 1e-4);
    }

    #[test]
    fn quadratic_scaling_and_conjugation() {
        let q1 = q_constant(1.0).unwrap();
        for xi in [0.5, 2.0, 4.0] {
            let q = q_constant(xi).unwrap();
            assert!((q / q1 - xi * xi).norm() < 1e-3 * xi * xi);
            let qm = q_constant(-xi).unwrap();
            assert!((qm - q.conj()).norm() < 1e-6 * xi * xi);
        }
        assert!(q_constant(0.0).is_err());
    }

    #[test]
    fn cubic_form_symmetry_and_homogeneity() {
        let g = GridSpec::new(8.0 * PI, 256).unwrap();
        let q = QuadratureScheme::default_for(&g);
        let phi = Field::from_fn(&g, |x: f64| (-x * x).exp());
        let c = cubic_q(&phi, &q).unwrap();
        // Q preserves parity: even data give even output, odd data vanish at 0.
        let n = g.len();
        for j in 1..n {
            assert!((c.values()[j] - c.values()[n - j]).abs() < 1e-14 * c.max_abs());
        }
        let odd = Field::from_fn(&g, |x: f64| x * (-x * x).exp());
        let co = cubic_q(&odd, &q).unwrap();
        assert_eq!(g.point(n / 2), 0.0);
        assert!(co.values()[n / 2].abs() < 1e-14 * co.max_abs());
        let eps = 0.1;
        let ce = cubic_q(&phi.scale(eps), &q).unwrap();
        let hd = ce.sub(&c.scale(eps * eps * eps)).unwrap().max_abs() / c.max_abs();
        assert!(hd < 1e-13, "{hd}");
        assert_eq!(cubic_q(&Field::zeros(&g), &q).unwrap().max_abs(), 0.0);
        let cc = cubic_q_complex(&ComplexField::from_real(&phi), &q).unwrap();
        let diff = cc.values().iter().zip(c.values()).map(|(z, r)| (z - r).norm()).fold(0.0, f64::max);
        assert!(diff < 1e-13 * c.max_abs());
    }
}
