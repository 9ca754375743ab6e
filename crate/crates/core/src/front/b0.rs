use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::pv::pv_unit_value;
use super::quadrature::QuadratureScheme;
use super::shape::f_shape;
use super::shifts::accumulate;
use crate::error::{Error, Result};
use crate::integrate::gauss_legendre;
use crate::scalar::Real;
use crate::spectral::{derivative, Field};

/// Panel layout for the pv pairing in `B⁰`: Gauss–Legendre panels on
/// `(0, 1]` for the renormalised inner part and on `[1, Y_max]` for the tail.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct B0Rule {
    pub inner_panels: usize,
    /// Target panel length on the tail.
    pub outer_panel_length: f64,
    pub points_per_panel: usize,
}

impl Default for B0Rule {
    fn default() -> Self {
        Self { inner_panels: 8, outer_panel_length: 0.5, points_per_panel: 8 }
    }
}

impl B0Rule {
    /// Positive nodes and weights; the first `inner` of them lie in `(0, 1]`.
    fn nodes(&self, y_max: f64) -> (Vec<f64>, Vec<f64>, usize) {
        let (x, w) = gauss_legendre(self.points_per_panel);
        let mut ys = Vec::new();
        let mut ws = Vec::new();
        let mut panel = |a: f64, b: f64| {
            let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
            for (xi, wi) in x.iter().zip(&w) {
                ys.push(c + h * xi);
                ws.push(h * wi);
            }
        };
        let inner_h = 1.0 / self.inner_panels as f64;
        for j in 0..self.inner_panels {
            panel(j as f64 * inner_h, (j + 1) as f64 * inner_h);
        }
        let inner = self.inner_panels * self.points_per_panel;
        let count = ((y_max - 1.0) / self.outer_panel_length).ceil() as usize;
        let h = (y_max - 1.0) / count as f64;
        for j in 0..count {
            panel(1.0 + j as f64 * h, 1.0 + (j + 1) as f64 * h);
        }
        (ys, ws, inner)
    }
}

/// Zeroth order coefficient
/// `B⁰(φ) = ⟨pv|y|^{-1}, F(δ^yφ)⟩ - F(φ_x) ⟨pv|y|^{-1}, e^{-iy}⟩`,
/// with the first pairing split at `|y| = 1` and its tail cut at `Y_max` of `q`.
pub fn b0_symbol<T: Real>(phi: &Field<T>, q: &QuadratureScheme<T>) -> Result<Field<T>> {
    b0_symbol_with(phi, q.y_max(), B0Rule::default())
}

pub fn b0_symbol_with<T: Real>(phi: &Field<T>, y_max: T, rule: B0Rule) -> Result<Field<T>> {
    let y_max_f = y_max.to_f64_lossy();
    if !(y_max_f > 1.0) {
        return Err(Error::invalid(format!("B0 needs Y_max > 1, got {y_max_f}")));
    }
    if rule.inner_panels == 0 || rule.points_per_panel == 0 || !(rule.outer_panel_length > 0.0) {
        return Err(Error::invalid("B0 panel rule must have positive sizes"));
    }
    let grid = phi.grid();
    let c0 = T::of(pv_unit_value()?);
    let f_slope: Vec<T> = derivative(phi).values().iter().map(|&s| f_shape(s)).collect();
    let (ys, ws, inner) = rule.nodes(y_max_f);
    let ys: Vec<T> = ys.into_iter().map(T::of).collect();
    let ws: Vec<T> = ws.into_iter().map(T::of).collect();

    // φ(x + y) in the real part and φ(x - y) in the imaginary part.
    let spec = phi.spectrum();
    let i = Complex::new(T::zero(), T::one());
    let base = phi.values();
    let two = T::of(2.0);
    let sum = accumulate(
        grid,
        &ys,
        1,
        |tw, buf| {
            for ((b, c), t) in buf.iter_mut().zip(spec).zip(tw) {
                *b = c * (t + i * t.conj());
            }
        },
        |idx, shifted, acc| {
            let y = ys[idx];
            let inv = T::one() / y;
            let w = ws[idx] * inv;
            for (j, (a, s)) in acc.iter_mut().zip(shifted).enumerate() {
                let fp = f_shape((s.re - base[j]) * inv);
                let fm = f_shape((base[j] - s.im) * inv);
                let pair = if idx < inner { fp + fm - two * f_slope[j] } else { fp + fm };
                *a += w * pair;
            }
        },
    );
    let values: Vec<T> = sum.iter().zip(&f_slope).map(|(&s, &f)| s - f * c0).collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::numerical("B0: non-finite value"));
    }
    Field::new(grid, values)
}
