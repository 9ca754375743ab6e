//! Deterministic parallel accumulation over translates of packed spectra.

use num_complex::Complex;
use rayon::prelude::*;

use crate::scalar::Real;
use crate::spectral::GridSpec;

/// Nodes per work unit. The reduction tree is fixed by this constant, not by
/// the thread count, so results are bit-identical for any pool size.
const BLOCK: usize = 16;

/// Exact `cis` is recomputed every this many recurrence steps.
const RESYNC: usize = 64;

/// `e^{i ξ_k y}` in storage order, with the Nyquist entry replaced by
/// `cos(ξ_N y)` so Hermitian spectra stay Hermitian.
pub(crate) fn twiddles<T: Real>(grid: &GridSpec<T>, y: T, out: &mut [Complex<T>]) {
    let n = grid.len();
    let theta = grid.xi_step() * y;
    let step = Complex::from_polar(T::one(), theta);
    let mut w = Complex::new(T::one(), T::zero());
    for m in 0..=n / 2 {
        if m % RESYNC == 0 {
            w = Complex::from_polar(T::one(), theta * T::of_usize(m));
        }
        if m == n / 2 {
            out[m] = Complex::new(w.re, T::zero());
        } else {
            out[m] = w;
            if m > 0 {
                out[n - m] = w.conj();
            }
        }
        w *= step;
    }
}

/// For each node `i`, builds a spectrum with `fill(twiddles(y_i), buf)`,
/// transforms it to physical space and lets `kernel(i, samples, acc)` add
/// its contribution to `lanes` blocks of `N` samples.
/// Returns the accumulated blocks, lane after lane.
pub(crate) fn accumulate<T, Fill, Kernel>(
    grid: &GridSpec<T>,
    nodes: &[T],
    lanes: usize,
    fill: Fill,
    kernel: Kernel,
) -> Vec<T>
where
    T: Real,
    Fill: Fn(&[Complex<T>], &mut [Complex<T>]) + Sync,
    Kernel: Fn(usize, &[Complex<T>], &mut [T]) + Sync,
{
    let n = grid.len();
    let partials: Vec<Vec<T>> = nodes
        .par_chunks(BLOCK)
        .enumerate()
        .map(|(b, chunk)| {
            let zero = Complex::new(T::zero(), T::zero());
            let mut tw = vec![zero; n];
            let mut buf = vec![zero; n];
            let mut scratch = vec![zero; grid.scratch_len()];
            let mut acc = vec![T::zero(); lanes * n];
            for (i, &y) in chunk.iter().enumerate() {
                twiddles(grid, y, &mut tw);
                fill(&tw, &mut buf);
                grid.inverse_with_scratch(&mut buf, &mut scratch);
                kernel(b * BLOCK + i, &buf, &mut acc);
            }
            acc
        })
        .collect();
    let mut total = vec![T::zero(); lanes * n];
    for p in partials {
        for (t, v) in total.iter_mut().zip(p) {
            *t += v;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twiddles_match_direct_cis() {
        let g = GridSpec::<f64>::new(3.0, 1024).unwrap();
        let mut tw = vec![Complex::new(0.0, 0.0); 1024];
        let y = 1.234_567f64;
        twiddles(&g, y, &mut tw);
        for (k, (t, &xi)) in tw.iter().zip(g.wavenumbers()).enumerate() {
            if k == g.nyquist_index() {
                assert!((t.re - (xi * y).cos()).abs() < 1e-13 && t.im == 0.0);
            } else {
                // the reference itself carries the rounding of ξ·y, up to ~1e-13 here
                assert!((t - Complex::from_polar(1.0, xi * y)).norm() < 5e-13);
            }
        }
    }
}
