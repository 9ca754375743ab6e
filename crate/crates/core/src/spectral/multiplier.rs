use num_complex::Complex;

use super::field::Field;
use super::grid::GridSpec;
use crate::error::Result;
use crate::scalar::Real;

/// Fourier multiplier sampled on the wavenumbers of a grid.
///
/// Singular symbols carry an explicit value at `ξ = 0` (zero unless stated).
/// Odd symbols have their Nyquist sample zeroed so real fields stay real.
#[derive(Clone, Debug)]
pub struct FourierMultiplier<T: Real> {
    grid: GridSpec<T>,
    name: String,
    samples: Vec<Complex<T>>,
}

impl<T: Real> FourierMultiplier<T> {
    pub fn from_samples(grid: &GridSpec<T>, name: impl Into<String>, samples: Vec<Complex<T>>) -> Self {
        assert_eq!(samples.len(), grid.len());
        Self { grid: grid.clone(), name: name.into(), samples }
    }

    /// Samples `symbol(ξ_k)` at every wavenumber.
    pub fn from_symbol(grid: &GridSpec<T>, name: impl Into<String>, symbol: impl Fn(T) -> Complex<T>) -> Self {
        let samples = grid.wavenumbers().iter().map(|&xi| symbol(xi)).collect();
        Self::from_samples(grid, name, samples)
    }

    /// Real even symbol.
    pub fn even(grid: &GridSpec<T>, name: impl Into<String>, symbol: impl Fn(T) -> T) -> Self {
        Self::from_symbol(grid, name, |xi| Complex::new(symbol(xi), T::zero()))
    }

    /// `i·symbol(ξ)` for a real odd `symbol`; the Nyquist sample is zeroed.
    pub fn odd(grid: &GridSpec<T>, name: impl Into<String>, symbol: impl Fn(T) -> T) -> Self {
        let mut m = Self::from_symbol(grid, name, |xi| Complex::new(T::zero(), symbol(xi)));
        let ny = grid.nyquist_index();
        m.samples[ny] = Complex::new(T::zero(), T::zero());
        m
    }

    pub fn identity(grid: &GridSpec<T>) -> Self {
        Self::even(grid, "identity", |_| T::one())
    }

    /// `∂_x`.
    pub fn derivative(grid: &GridSpec<T>) -> Self {
        Self::odd(grid, "d/dx", |xi| xi)
    }

    /// `log|D|`, with value 0 at `ξ = 0`.
    pub fn log_abs(grid: &GridSpec<T>) -> Self {
        Self::even(grid, "log|D|", log_abs)
    }

    /// `|D|^s`. The zero mode is 1 for `s = 0` and 0 otherwise.
    pub fn abs_pow(grid: &GridSpec<T>, s: T) -> Self {
        Self::even(grid, format!("|D|^{s}"), move |xi| {
            if xi == T::zero() {
                if s == T::zero() {
                    T::one()
                } else {
                    T::zero()
                }
            } else {
                xi.abs().powf(s)
            }
        })
    }

    /// `c · log|D| ∂_x`, symbol `i c ξ log|ξ|`.
    pub fn log_derivative(grid: &GridSpec<T>, c: T) -> Self {
        Self::odd(grid, format!("{c}·log|D|d/dx"), move |xi| c * xi * log_abs(xi))
    }

    #[inline]
    pub fn grid(&self) -> &GridSpec<T> {
        &self.grid
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn samples(&self) -> &[Complex<T>] {
        &self.samples
    }

    /// `m(-ξ) = conj(m(ξ))` for paired modes and a real Nyquist sample.
    pub fn is_hermitian_compatible(&self, tol: T) -> bool {
        let g = &self.grid;
        (0..g.len()).all(|k| {
            let c = g.conjugate_index(k);
            if c == k {
                self.samples[k].im.abs() <= tol
            } else {
                (self.samples[k] - self.samples[c].conj()).norm() <= tol
            }
        })
    }

    /// Pointwise product of two multipliers on the same grid.
    pub fn compose(&self, other: &Self) -> Self {
        let samples = self.samples.iter().zip(&other.samples).map(|(a, b)| a * b).collect();
        Self { grid: self.grid.clone(), name: format!("{}∘{}", self.name, other.name), samples }
    }

    pub(crate) fn apply_to_spectrum(&self, spectrum: &[Complex<T>]) -> Vec<Complex<T>> {
        spectrum.iter().zip(&self.samples).map(|(c, m)| c * m).collect()
    }
}

#[inline]
pub(crate) fn log_abs<T: Real>(xi: T) -> T {
    if xi == T::zero() {
        T::zero()
    } else {
        xi.abs().ln()
    }
}

/// Applies `m` to a real field. Symbols that are not Hermitian-compatible
/// have their output projected to the real part.
pub fn apply_multiplier<T: Real>(f: &Field<T>, m: &FourierMultiplier<T>) -> Result<Field<T>> {
    f.grid().ensure_same(m.grid(), "apply_multiplier")?;
    Ok(Field::from_spectrum(f.grid(), &m.apply_to_spectrum(f.spectrum())))
}

/// Applies `m` and reports the imaginary residue of the raw inverse
/// transform relative to the output norm.
pub fn apply_multiplier_with_residue<T: Real>(f: &Field<T>, m: &FourierMultiplier<T>) -> Result<(Field<T>, T)> {
    f.grid().ensure_same(m.grid(), "apply_multiplier")?;
    Ok(Field::from_spectrum_with_residue(f.grid(), &m.apply_to_spectrum(f.spectrum())))
}

/// Spectrally exact translate `f(· + y)` of the band-limited interpolant.
///
/// The Nyquist coefficient is scaled by `cos(ξ_N y)`, which is what the
/// real interpolant takes on the shifted grid points.
pub fn spectral_shift<T: Real>(f: &Field<T>, y: T) -> Field<T> {
    let g = f.grid();
    let shifted = shift_spectrum(g, f.spectrum(), y);
    Field::from_spectrum(g, &shifted)
}

pub(crate) fn shift_spectrum<T: Real>(g: &GridSpec<T>, spectrum: &[Complex<T>], y: T) -> Vec<Complex<T>> {
    let ny = g.nyquist_index();
    spectrum
        .iter()
        .zip(g.wavenumbers())
        .enumerate()
        .map(|(k, (c, &xi))| {
            if k == ny {
                c * (xi * y).cos()
            } else {
                c * Complex::from_polar(T::one(), xi * y)
            }
        })
        .collect()
}

/// `∂_x f`.
pub fn derivative<T: Real>(f: &Field<T>) -> Field<T> {
    let g = f.grid();
    let ny = g.nyquist_index();
    let spec: Vec<Complex<T>> = f
        .spectrum()
        .iter()
        .zip(g.wavenumbers())
        .enumerate()
        .map(|(k, (c, &xi))| if k == ny { Complex::new(T::zero(), T::zero()) } else { c * Complex::new(T::zero(), xi) })
        .collect();
    Field::from_spectrum(g, &spec)
}
