use num_complex::Complex;

use super::field::Field;
use super::grid::GridSpec;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Copies the paired modes `|m| < N/2` of a normalised spectrum on `from`
/// into a spectrum of length `to.len()`. Modes that do not fit are dropped;
/// the Nyquist mode of the source is never copied.
pub(crate) fn transfer_spectrum<T: Real>(from: &GridSpec<T>, spec: &[Complex<T>], to: &GridSpec<T>) -> Vec<Complex<T>> {
    let zero = Complex::new(T::zero(), T::zero());
    let mut out = vec![zero; to.len()];
    let keep = (from.len().min(to.len()) / 2) as i64;
    for m in -(keep - 1)..keep {
        let src = from.index_of_mode(m).expect("mode on source grid");
        let dst = to.index_of_mode(m).expect("mode on target grid");
        out[dst] = spec[src];
    }
    out
}

/// Trigonometric interpolation (or truncation) of `f` onto `n` points of the same period.
pub fn resample<T: Real>(f: &Field<T>, n: usize) -> Result<Field<T>> {
    let to = f.grid().with_points(n)?;
    Ok(Field::from_spectrum(&to, &transfer_spectrum(f.grid(), f.spectrum(), &to)))
}

/// Evaluates the trigonometric interpolant of `f` at arbitrary points.
pub fn interpolate_at<T: Real>(f: &Field<T>, xs: &[T]) -> Vec<T> {
    let g = f.grid();
    let spec = f.spectrum();
    let ny = g.nyquist_index();
    let x0 = -g.half_length();
    xs.iter()
        .map(|&x| {
            let mut acc = T::zero();
            for (k, (c, &xi)) in spec.iter().zip(g.wavenumbers()).enumerate() {
                let theta = xi * (x - x0);
                if k == ny {
                    acc += c.re * theta.cos();
                } else {
                    acc += c.re * theta.cos() - c.im * theta.sin();
                }
            }
            acc
        })
        .collect()
}

/// Checks the fields share a grid and returns it.
pub(crate) fn common_grid<'a, T: Real>(a: &'a Field<T>, b: &Field<T>, what: &str) -> Result<&'a GridSpec<T>> {
    if a.grid() == b.grid() {
        Ok(a.grid())
    } else {
        Err(Error::invalid(format!("{what}: grids differ ({:?} vs {:?})", a.grid(), b.grid())))
    }
}
