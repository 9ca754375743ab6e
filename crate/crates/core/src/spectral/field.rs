use std::sync::OnceLock;

use num_complex::Complex;

use super::grid::GridSpec;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Real samples on a periodic grid with a lazily cached normalised spectrum.
///
/// Fields are immutable; every operation returns a new field. The spectrum
/// cache is filled at most once.
#[derive(Clone)]
pub struct Field<T: Real> {
    grid: GridSpec<T>,
    values: Vec<T>,
    spectrum: OnceLock<Vec<Complex<T>>>,
}

impl<T: Real> Field<T> {
    pub fn new(grid: &GridSpec<T>, values: Vec<T>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::invalid(format!("expected {} samples, got {}", grid.len(), values.len())));
        }
        if let Some(j) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!("non-finite sample at index {j}")));
        }
        Ok(Self { grid: grid.clone(), values, spectrum: OnceLock::new() })
    }

    pub(crate) fn from_parts(grid: &GridSpec<T>, values: Vec<T>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        Self { grid: grid.clone(), values, spectrum: OnceLock::new() }
    }

    pub fn zeros(grid: &GridSpec<T>) -> Self {
        Self::from_parts(grid, vec![T::zero(); grid.len()])
    }

    pub fn constant(grid: &GridSpec<T>, c: T) -> Self {
        Self::from_parts(grid, vec![c; grid.len()])
    }

    /// Samples `f(x_j)`.
    pub fn from_fn(grid: &GridSpec<T>, f: impl Fn(T) -> T) -> Self {
        Self::from_parts(grid, grid.points().into_iter().map(f).collect())
    }

    /// Builds a real field from a normalised spectrum. The spectrum is
    /// projected onto its Hermitian part first; the projection is cached.
    pub fn from_spectrum(grid: &GridSpec<T>, spectrum: &[Complex<T>]) -> Self {
        let sym = hermitian_part(grid, spectrum);
        let values = grid.synthesize(&sym).into_iter().map(|c| c.re).collect();
        let field = Self::from_parts(grid, values);
        let _ = field.spectrum.set(sym);
        field
    }

    /// Like [`Field::from_spectrum`] without the projection; also returns the
    /// largest imaginary sample relative to the L² norm of the real part.
    pub fn from_spectrum_with_residue(grid: &GridSpec<T>, spectrum: &[Complex<T>]) -> (Self, T) {
        let samples = grid.synthesize(spectrum);
        let max_im = samples.iter().fold(T::zero(), |m, c| m.max(c.im.abs()));
        let values: Vec<T> = samples.into_iter().map(|c| c.re).collect();
        let field = Self::from_parts(grid, values);
        let norm = field.l2_norm();
        let rel = if norm > T::zero() { max_im / norm } else { max_im };
        (field, rel)
    }

    #[inline]
    pub fn grid(&self) -> &GridSpec<T> {
        &self.grid
    }

    #[inline]
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Normalised spectrum in FFT storage order.
    pub fn spectrum(&self) -> &[Complex<T>] {
        self.spectrum.get_or_init(|| self.grid.analyze(&self.values))
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Self::from_parts(&self.grid, self.values.iter().map(|&v| f(v)).collect())
    }

    pub fn zip_map(&self, other: &Self, f: impl Fn(T, T) -> T) -> Result<Self> {
        self.grid.ensure_same(&other.grid, "zip_map")?;
        Ok(Self::from_parts(&self.grid, self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect()))
    }

    pub fn scale(&self, c: T) -> Self {
        self.map(|v| v * c)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_map(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_map(other, |a, b| a - b)
    }

    /// `∫ f g dx` by the periodic trapezoid rule.
    pub fn inner(&self, other: &Self) -> Result<T> {
        self.grid.ensure_same(&other.grid, "inner")?;
        let s: T = self.values.iter().zip(&other.values).map(|(&a, &b)| a * b).sum();
        Ok(s * self.grid.spacing())
    }

    pub fn l2_norm(&self) -> T {
        let s: T = self.values.iter().map(|&v| v * v).sum();
        (s * self.grid.spacing()).sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    /// Mean value (the zero mode).
    pub fn mean(&self) -> T {
        self.spectrum()[0].re
    }

    /// Relative L² distance `‖self - other‖ / ‖other‖` (absolute if `other` vanishes).
    pub fn rel_l2_distance(&self, other: &Self) -> Result<T> {
        let d = self.sub(other)?.l2_norm();
        let n = other.l2_norm();
        Ok(if n > T::zero() { d / n } else { d })
    }
}

impl<T: Real> std::fmt::Debug for Field<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Field").field("grid", &self.grid).field("l2", &self.l2_norm()).finish()
    }
}

/// Complex samples on a periodic grid. Used for wave packets and the
/// semiclassical test of the cubic form.
#[derive(Clone, Debug)]
pub struct ComplexField<T: Real> {
    grid: GridSpec<T>,
    values: Vec<Complex<T>>,
}

impl<T: Real> ComplexField<T> {
    pub fn new(grid: &GridSpec<T>, values: Vec<Complex<T>>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::invalid(format!("expected {} samples, got {}", grid.len(), values.len())));
        }
        Ok(Self { grid: grid.clone(), values })
    }

    pub fn from_fn(grid: &GridSpec<T>, f: impl Fn(T) -> Complex<T>) -> Self {
        Self { grid: grid.clone(), values: grid.points().into_iter().map(f).collect() }
    }

    pub fn from_real(f: &Field<T>) -> Self {
        Self { grid: f.grid().clone(), values: f.values().iter().map(|&v| Complex::new(v, T::zero())).collect() }
    }

    #[inline]
    pub fn grid(&self) -> &GridSpec<T> {
        &self.grid
    }

    #[inline]
    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn spectrum(&self) -> Vec<Complex<T>> {
        self.grid.analyze_complex(&self.values)
    }

    pub fn from_spectrum(grid: &GridSpec<T>, spectrum: &[Complex<T>]) -> Self {
        Self { grid: grid.clone(), values: grid.synthesize(spectrum) }
    }

    pub fn real_part(&self) -> Field<T> {
        Field::from_parts(&self.grid, self.values.iter().map(|c| c.re).collect())
    }

    pub fn l2_norm(&self) -> T {
        let s: T = self.values.iter().map(|c| c.norm_sqr()).sum();
        (s * self.grid.spacing()).sqrt()
    }

    /// `∫ f conj(g) dx`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        self.grid.ensure_same(&other.grid, "inner")?;
        let s = self
            .values
            .iter()
            .zip(&other.values)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a * b.conj());
        Ok(s * self.grid.spacing())
    }
}

/// Hermitian projection `(c_k + conj(c_{-k})) / 2`; the Nyquist mode keeps its real part.
pub(crate) fn hermitian_part<T: Real>(grid: &GridSpec<T>, spectrum: &[Complex<T>]) -> Vec<Complex<T>> {
    let half = T::of(0.5);
    (0..grid.len())
        .map(|k| {
            let c = grid.conjugate_index(k);
            (spectrum[k] + spectrum[c].conj()) * half
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rejects_non_finite_samples() {
        let g = GridSpec::new(PI, 16).unwrap();
        let mut v = vec![0.0; 16];
        v[3] = f64::NAN;
        assert!(Field::new(&g, v).is_err());
        assert!(Field::new(&g, vec![0.0; 15]).is_err());
    }

    #[test]
    fn spectrum_of_cosine() {
        let g = GridSpec::new(PI, 16).unwrap();
        let f = Field::from_fn(&g, |x: f64| x.cos());
        let s = f.spectrum();
        let i1 = g.index_of_mode(1).unwrap();
        let im1 = g.index_of_mode(-1).unwrap();
        // x_0 = -π so the mode ±1 picks up the phase e^{∓iπ} = -1
        assert!((s[i1].re + 0.5).abs() < 1e-14 && (s[im1].re + 0.5).abs() < 1e-14);
        let back = Field::from_spectrum(&g, s);
        assert!(back.rel_l2_distance(&f).unwrap() < 1e-14);
        assert!((f.l2_norm() - PI.sqrt()).abs() < 1e-13);
    }
}
