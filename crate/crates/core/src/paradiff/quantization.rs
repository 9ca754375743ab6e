use num_complex::Complex;
use rayon::prelude::*;

use super::cutoff::ParaCutoff;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectral::{common_grid, Field, GridSpec};

/// Largest grid for which [`ta_matrix`] materialises the operator.
pub const MAX_MATRIX_POINTS: usize = 4096;

/// Coefficient tables shared by the matrix-free and dense realisations of `T_a`.
struct Quantizer<T: Real> {
    /// Retained signed modes, ascending (the Nyquist mode is excluded).
    modes: Vec<i64>,
    xi: Vec<T>,
    high: Vec<T>,
    /// `â_d` for `d ∈ (-N/2, N/2)`, stored at `d + N/2`.
    a_hat: Vec<Complex<T>>,
    cutoff: ParaCutoff<T>,
    half: i64,
}

impl<T: Real> Quantizer<T> {
    fn new(a: &Field<T>, cutoff: &ParaCutoff<T>) -> Self {
        let g = a.grid();
        let half = (g.len() / 2) as i64;
        let modes: Vec<i64> = (-(half - 1)..half).collect();
        let step = g.xi_step();
        let xi: Vec<T> = modes.iter().map(|&m| step * T::of(m as f64)).collect();
        let high = xi.iter().map(|&x| cutoff.high_pass(x)).collect();
        let spec = a.spectrum();
        let zero = Complex::new(T::zero(), T::zero());
        let mut a_hat = vec![zero; 2 * half as usize];
        for d in -(half - 1)..half {
            a_hat[(d + half) as usize] = spec[g.index_of_mode(d).expect("mode on grid")];
        }
        Self { modes, xi, high, a_hat, cutoff: *cutoff, half }
    }

    fn dim(&self) -> usize {
        self.modes.len()
    }

    /// Matrix entry for output mode index `r` and input mode index `c`.
    #[inline]
    fn entry(&self, r: usize, c: usize) -> Complex<T> {
        let zero = Complex::new(T::zero(), T::zero());
        let (pr, pc) = (self.high[r], self.high[c]);
        if pr == T::zero() || pc == T::zero() {
            return zero;
        }
        let d = self.modes[r] - self.modes[c];
        if d.abs() >= self.half {
            return zero;
        }
        let chi = self.cutoff.chi_tilde(self.xi[r] - self.xi[c], self.xi[r] + self.xi[c]);
        if chi == T::zero() {
            return zero;
        }
        self.a_hat[(d + self.half) as usize] * (pr * chi * pc)
    }

    fn row_times(&self, r: usize, u: &[Complex<T>]) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        if self.high[r] == T::zero() {
            return acc;
        }
        for (c, uc) in u.iter().enumerate() {
            acc += self.entry(r, c) * uc;
        }
        acc
    }
}

fn to_mode_order<T: Real>(g: &GridSpec<T>, spec: &[Complex<T>], modes: &[i64]) -> Vec<Complex<T>> {
    modes.iter().map(|&m| spec[g.index_of_mode(m).expect("mode on grid")]).collect()
}

fn from_mode_order<T: Real>(g: &GridSpec<T>, coeffs: &[Complex<T>], modes: &[i64]) -> Field<T> {
    let mut spec = vec![Complex::new(T::zero(), T::zero()); g.len()];
    for (&m, &c) in modes.iter().zip(coeffs) {
        spec[g.index_of_mode(m).expect("mode on grid")] = c;
    }
    Field::from_spectrum(g, &spec)
}

/// `T_a u` with normalised coefficients
/// `(T_a u)_ξ = Σ_η P_{>M}(ξ) χ̃(ξ - η, ξ + η) â(ξ - η) P_{>M}(η) û(η)`,
/// summed over retained modes with `|ξ - η| < N/2` in mode units.
pub fn apply_ta<T: Real>(a: &Field<T>, u: &Field<T>, cutoff: &ParaCutoff<T>) -> Result<Field<T>> {
    let g = common_grid(a, u, "apply_ta")?;
    let q = Quantizer::new(a, cutoff);
    let uc = to_mode_order(g, u.spectrum(), &q.modes);
    let out: Vec<Complex<T>> = (0..q.dim()).into_par_iter().map(|r| q.row_times(r, &uc)).collect();
    Ok(from_mode_order(g, &out, &q.modes))
}

/// Dense realisation of `T_a` on the retained modes (ascending signed order,
/// Nyquist excluded). In normalised coefficients the L² inner product is a
/// constant multiple of the Euclidean one, so matrix norms are operator norms.
#[derive(Clone, Debug)]
pub struct OperatorMatrix<T: Real> {
    grid: GridSpec<T>,
    modes: Vec<i64>,
    entries: Vec<Complex<T>>,
    tag: String,
}

impl<T: Real> OperatorMatrix<T> {
    pub fn dim(&self) -> usize {
        self.modes.len()
    }

    pub fn modes(&self) -> &[i64] {
        &self.modes
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn grid(&self) -> &GridSpec<T> {
        &self.grid
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex<T> {
        self.entries[r * self.dim() + c]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn matvec(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        let n = self.dim();
        self.entries
            .par_chunks(n)
            .map(|row| row.iter().zip(x).fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a * b))
            .collect()
    }

    pub fn adjoint_matvec(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        let n = self.dim();
        let zero = Complex::new(T::zero(), T::zero());
        let mut out = vec![zero; n];
        for (row, xr) in self.entries.chunks(n).zip(x) {
            for (o, a) in out.iter_mut().zip(row) {
                *o += a.conj() * xr;
            }
        }
        out
    }

    /// Applies the matrix to a real field.
    pub fn apply(&self, u: &Field<T>) -> Result<Field<T>> {
        self.grid.ensure_same(u.grid(), "OperatorMatrix::apply")?;
        let x = to_mode_order(&self.grid, u.spectrum(), &self.modes);
        Ok(from_mode_order(&self.grid, &self.matvec(&x), &self.modes))
    }

    /// `max |A - A*|` over all entries.
    pub fn hermitian_defect(&self) -> T {
        let n = self.dim();
        let mut worst = T::zero();
        for r in 0..n {
            for c in r..n {
                worst = worst.max((self.get(r, c) - self.get(c, r).conj()).norm());
            }
        }
        worst
    }
}

/// Materialises `T_a` as a dense matrix. Refuses grids above [`MAX_MATRIX_POINTS`].
pub fn ta_matrix<T: Real>(a: &Field<T>, cutoff: &ParaCutoff<T>) -> Result<OperatorMatrix<T>> {
    let n = a.grid().len();
    if n > MAX_MATRIX_POINTS {
        return Err(Error::invalid(format!("ta_matrix: {n} points exceeds the limit of {MAX_MATRIX_POINTS}")));
    }
    let q = Quantizer::new(a, cutoff);
    let dim = q.dim();
    let mut entries = vec![Complex::new(T::zero(), T::zero()); dim * dim];
    entries.par_chunks_mut(dim).enumerate().for_each(|(r, row)| {
        for (c, e) in row.iter_mut().enumerate() {
            *e = q.entry(r, c);
        }
    });
    Ok(OperatorMatrix {
        grid: a.grid().clone(),
        modes: q.modes,
        entries,
        tag: format!("T_a, M = {}", cutoff.m()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::GridSpec;

    fn gaussian(g: &GridSpec<f64>) -> Field<f64> {
        Field::from_fn(g, |x: f64| 0.3 * (-x * x).exp() + 0.1 * (2.0 * x).sin())
    }

    #[test]
    fn constant_symbol_is_squared_high_pass() {
        let g = GridSpec::new(8.0, 128).unwrap();
        let c = ParaCutoff::new(2.0).unwrap();
        let u = gaussian(&g);
        let out = apply_ta(&Field::constant(&g, 1.0), &u, &c).unwrap();
        let spec: Vec<_> = u
            .spectrum()
            .iter()
            .zip(g.wavenumbers())
            .enumerate()
            .map(|(k, (s, &xi))| if k == g.nyquist_index() { s * 0.0 } else { s * c.high_pass(xi).powi(2) })
            .collect();
        let expected = Field::from_spectrum(&g, &spec);
        assert!(out.sub(&expected).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn low_frequency_input_is_annihilated() {
        let g = GridSpec::new(std::f64::consts::PI, 64).unwrap();
        let c = ParaCutoff::new(8.0).unwrap();
        let u = Field::from_fn(&g, |x: f64| x.cos() + (4.0 * x).sin());
        let out = apply_ta(&gaussian(&g), &u, &c).unwrap();
        assert!(out.max_abs() < 1e-14);
        for (s, &xi) in out.spectrum().iter().zip(g.wavenumbers()) {
            if xi.abs() <= 4.0 {
                assert_eq!(s.norm(), 0.0);
            }
        }
    }

    #[test]
    fn matrix_matches_matrix_free_action() {
        let g = GridSpec::new(8.0, 64).unwrap();
        let c = ParaCutoff::new(1.0).unwrap();
        let a = gaussian(&g);
        let m = ta_matrix(&a, &c).unwrap();
        let u = Field::from_fn(&g, |x: f64| (-(x - 1.0).powi(2)).exp() * (5.0 * x).cos());
        let d = m.apply(&u).unwrap().sub(&apply_ta(&a, &u, &c).unwrap()).unwrap();
        assert!(d.max_abs() < 1e-14);
        assert!(m.hermitian_defect() < 1e-15);
        let zero = ta_matrix(&Field::zeros(&g), &c).unwrap();
        assert!(zero.entries().iter().all(|e| e.norm() == 0.0));
    }

    #[test]
    fn size_guard() {
        let g = GridSpec::new(8.0, 8192).unwrap();
        assert!(ta_matrix(&Field::zeros(&g), &ParaCutoff::new(1.0).unwrap()).is_err());
    }
}
