use std::fmt;
use std::sync::Arc;

use num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Uniform periodic grid on `[-L, L)` with `N` points.
///
/// Cloning is cheap: the FFT plans and wavenumber table are shared.
#[derive(Clone)]
pub struct GridSpec<T: Real> {
    inner: Arc<GridInner<T>>,
}

struct GridInner<T: Real> {
    half_length: T,
    n: usize,
    forward: Arc<dyn Fft<T>>,
    inverse: Arc<dyn Fft<T>>,
    wavenumbers: Vec<T>,
}

impl<T: Real> GridSpec<T> {
    pub fn new(half_length: T, n: usize) -> Result<Self> {
        if !(half_length > T::zero()) || !half_length.is_finite() {
            return Err(Error::invalid(format!("half length must be positive, got {half_length}")));
        }
        if n < 16 || !n.is_power_of_two() {
            return Err(Error::invalid(format!("point count must be a power of two >= 16, got {n}")));
        }
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        let step = T::PI() / half_length;
        let wavenumbers = (0..n).map(|k| step * T::of(signed_mode(k, n) as f64)).collect();
        Ok(Self { inner: Arc::new(GridInner { half_length, n, forward, inverse, wavenumbers }) })
    }

    #[inline]
    pub fn half_length(&self) -> T {
        self.inner.half_length
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.inner.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Point spacing `2L / N`.
    #[inline]
    pub fn spacing(&self) -> T {
        T::of(2.0) * self.inner.half_length / T::of_usize(self.inner.n)
    }

    #[inline]
    pub fn point(&self, j: usize) -> T {
        -self.inner.half_length + T::of_usize(j) * self.spacing()
    }

    pub fn points(&self) -> Vec<T> {
        (0..self.len()).map(|j| self.point(j)).collect()
    }

    /// Wavenumbers `ξ_k = (π/L) k` in FFT storage order.
    #[inline]
    pub fn wavenumbers(&self) -> &[T] {
        &self.inner.wavenumbers
    }

    /// Spacing of the wavenumber lattice, `π / L`.
    #[inline]
    pub fn xi_step(&self) -> T {
        T::PI() / self.inner.half_length
    }

    /// Magnitude of the unpaired Nyquist wavenumber.
    #[inline]
    pub fn nyquist(&self) -> T {
        self.xi_step() * T::of_usize(self.inner.n / 2)
    }

    /// Storage index of the Nyquist mode.
    #[inline]
    pub fn nyquist_index(&self) -> usize {
        self.inner.n / 2
    }

    /// Signed mode number for storage index `k`.
    #[inline]
    pub fn mode(&self, k: usize) -> i64 {
        signed_mode(k, self.inner.n)
    }

    /// Storage index of the signed mode `m`, if it is on the grid.
    #[inline]
    pub fn index_of_mode(&self, m: i64) -> Option<usize> {
        let n = self.inner.n as i64;
        if m < -n / 2 || m >= n / 2 {
            None
        } else {
            Some(m.rem_euclid(n) as usize)
        }
    }

    /// Storage index of the mode `-m` paired with storage index `k`.
    #[inline]
    pub fn conjugate_index(&self, k: usize) -> usize {
        (self.inner.n - k) % self.inner.n
    }

    /// Normalised spectrum `c_k = N^{-1} Σ_j f_j e^{-2πi jk/N}` of real samples.
    pub fn analyze(&self, values: &[T]) -> Vec<Complex<T>> {
        let mut buf: Vec<Complex<T>> = values.iter().map(|&v| Complex::new(v, T::zero())).collect();
        self.forward_in_place(&mut buf);
        let scale = T::one() / T::of_usize(self.len());
        buf.iter_mut().for_each(|c| *c *= scale);
        buf
    }

    /// Normalised spectrum of complex samples.
    pub fn analyze_complex(&self, values: &[Complex<T>]) -> Vec<Complex<T>> {
        let mut buf = values.to_vec();
        self.forward_in_place(&mut buf);
        let scale = T::one() / T::of_usize(self.len());
        buf.iter_mut().for_each(|c| *c *= scale);
        buf
    }

    /// Samples `f_j = Σ_k c_k e^{2πi jk/N}` from a normalised spectrum.
    pub fn synthesize(&self, coefficients: &[Complex<T>]) -> Vec<Complex<T>> {
        let mut buf = coefficients.to_vec();
        self.inverse_in_place(&mut buf);
        buf
    }

    /// Unnormalised forward transform.
    pub fn forward_in_place(&self, buf: &mut [Complex<T>]) {
        assert_eq!(buf.len(), self.len());
        self.inner.forward.process(buf);
    }

    /// Unnormalised inverse transform.
    pub fn inverse_in_place(&self, buf: &mut [Complex<T>]) {
        assert_eq!(buf.len(), self.len());
        self.inner.inverse.process(buf);
    }

    /// Scratch length needed by the `*_with_scratch` transforms.
    pub(crate) fn scratch_len(&self) -> usize {
        self.inner.forward.get_inplace_scratch_len().max(self.inner.inverse.get_inplace_scratch_len())
    }

    pub(crate) fn inverse_with_scratch(&self, buf: &mut [Complex<T>], scratch: &mut [Complex<T>]) {
        self.inner.inverse.process_with_scratch(buf, scratch);
    }

    /// Same half length, different point count.
    pub fn with_points(&self, n: usize) -> Result<Self> {
        Self::new(self.half_length(), n)
    }

    /// Grid with half length scaled by `factor` and the same point count.
    pub fn rescaled(&self, factor: T) -> Result<Self> {
        Self::new(self.half_length() * factor, self.len())
    }

    pub(crate) fn ensure_same(&self, other: &Self, what: &str) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::invalid(format!("{what}: grids differ ({self:?} vs {other:?})")))
        }
    }
}

#[inline]
fn signed_mode(k: usize, n: usize) -> i64 {
    if k < n / 2 {
        k as i64
    } else {
        k as i64 - n as i64
    }
}

impl<T: Real> PartialEq for GridSpec<T> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.n == other.inner.n && self.inner.half_length == other.inner.half_length)
    }
}

impl<T: Real> fmt::Debug for GridSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GridSpec").field("half_length", &self.inner.half_length).field("points", &self.inner.n).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn unit_lattice_on_two_pi_period() {
        let g = GridSpec::new(PI, 16).unwrap();
        let mut xi: Vec<f64> = g.wavenumbers().to_vec();
        xi.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let expected: Vec<f64> = (-8..8).map(|k| k as f64).collect();
        for (a, b) in xi.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn spacing_and_xi_step() {
        let g = GridSpec::new(2.0 * PI, 32).unwrap();
        assert!((g.spacing() - PI / 8.0).abs() < 1e-15);
        assert!((g.xi_step() - 0.5).abs() < 1e-15);
        let x = g.points();
        assert!(x.windows(2).all(|w| (w[1] - w[0] - PI / 8.0).abs() < 1e-14));
        assert_eq!(x[0], -2.0 * PI);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(GridSpec::new(PI, 7).is_err());
        assert!(GridSpec::new(PI, 8).is_err());
        assert!(GridSpec::new(PI, 24).is_err());
        assert!(GridSpec::new(0.0, 16).is_err());
        assert!(GridSpec::new(-1.0, 16).is_err());
    }

    #[test]
    fn wavenumbers_are_symmetric_except_nyquist() {
        let g = GridSpec::<f64>::new(3.0, 64).unwrap();
        for k in 0..64 {
            if k == g.nyquist_index() {
                assert!((g.wavenumbers()[k] + g.nyquist()).abs() < 1e-14);
                continue;
            }
            let c = g.conjugate_index(k);
            assert_eq!(g.wavenumbers()[k], -g.wavenumbers()[c]);
        }
    }
}
