use num_complex::Complex;
use serde::Serialize;

use super::cutoff::ParaCutoff;
use super::quantization::{ta_matrix, OperatorMatrix};
use crate::error::{Error, Result};
use crate::front::f_shape;
use crate::scalar::Real;
use crate::spectral::{sobolev_norm, Field};

pub const POWER_TOL: f64 = 1e-8;
pub const POWER_MAX_ITER: usize = 1000;

/// Largest singular value by power iteration on `A*A` from a fixed start vector.
pub fn matrix_norm<T: Real>(m: &OperatorMatrix<T>) -> Result<T> {
    let n = m.dim();
    let mut x: Vec<Complex<T>> = (0..n)
        .map(|j| {
            let t = T::of_usize(j);
            Complex::new((t * T::of(0.7548776662)).sin() + T::of(1.1), (t * T::of(0.5698402910)).cos())
        })
        .collect();
    let norm = |v: &[Complex<T>]| v.iter().map(|c| c.norm_sqr()).sum::<T>().sqrt();
    let nx = norm(&x);
    x.iter_mut().for_each(|c| *c /= nx);
    let mut prev = T::zero();
    let mut estimate = T::zero();
    for it in 0..POWER_MAX_ITER {
        let y = m.matvec(&x);
        estimate = norm(&y);
        if estimate == T::zero() {
            return Ok(T::zero());
        }
        let z = m.adjoint_matvec(&y);
        let nz = norm(&z);
        if nz == T::zero() {
            return Ok(estimate);
        }
        x = z.into_iter().map(|c| c / nz).collect();
        if it > 0 && (estimate - prev).abs() <= T::of(POWER_TOL) * estimate {
            return Ok(estimate);
        }
        prev = estimate;
    }
    Err(Error::NotConverged { iterations: POWER_MAX_ITER, estimate: estimate.to_f64_lossy() })
}

/// `‖T_a‖_{L² → L²}`.
pub fn operator_norm<T: Real>(a: &Field<T>, cutoff: &ParaCutoff<T>) -> Result<T> {
    matrix_norm(&ta_matrix(a, cutoff)?)
}

/// Split `a = P_{≤M/2} a + P_{>M/2} a` with the same smooth high pass at `M/2`.
pub fn split_symbol<T: Real>(a: &Field<T>, cutoff: &ParaCutoff<T>) -> Result<(Field<T>, Field<T>)> {
    let half = ParaCutoff::new(cutoff.m() * T::of(0.5))?;
    let g = a.grid();
    let high: Vec<Complex<T>> =
        a.spectrum().iter().zip(g.wavenumbers()).map(|(c, &xi)| c * half.high_pass(xi)).collect();
    let high = Field::from_spectrum(g, &high);
    Ok((a.sub(&high)?, high))
}

/// Both sides of `‖T_a‖ ≤ max|a| + C ‖P_{>M/2} a‖_∞`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct NormBound<T> {
    pub norm: T,
    pub sup: T,
    pub low_sup: T,
    pub high_sup: T,
    pub constant: T,
}

impl<T: Real> NormBound<T> {
    pub fn holds(&self) -> bool {
        self.norm <= self.sup + self.constant * self.high_sup
    }

    /// The sharper form with `‖P_{≤M/2} a‖_∞` in place of `max|a|`.
    pub fn holds_low_form(&self) -> bool {
        self.norm <= self.low_sup + self.constant * self.high_sup
    }
}

pub fn norm_bound<T: Real>(a: &Field<T>, cutoff: &ParaCutoff<T>, constant: T) -> Result<NormBound<T>> {
    let (low, high) = split_symbol(a, cutoff)?;
    Ok(NormBound {
        norm: operator_norm(a, cutoff)?,
        sup: a.max_abs(),
        low_sup: low.max_abs(),
        high_sup: high.max_abs(),
        constant,
    })
}

/// `1 - (1 - F(u))^r`.
pub fn energy_symbol<T: Real>(u: &Field<T>, r: u32) -> Field<T> {
    u.map(|s| T::one() - (T::one() - f_shape(s)).powi(r as i32))
}

#[derive(Clone, Debug, Serialize)]
pub struct NormProbe {
    #[serde(rename = "M")]
    pub chosen_m: f64,
    pub r: u32,
    pub s: f64,
    #[serde(rename = "R")]
    pub radius: f64,
    pub samples: usize,
    /// Largest operator norm over the samples at each tried `M`.
    pub trace: Vec<(f64, f64)>,
    /// Operator norm of each sample at the chosen `M`.
    pub norms: Vec<f64>,
    pub margin: f64,
}

impl NormProbe {
    pub fn achieved(&self) -> f64 {
        self.norms.iter().copied().fold(0.0, f64::max)
    }
}

pub const CHOOSE_M_MARGIN: f64 = 0.05;

/// Smallest dyadic `M` between the lattice spacing and the Nyquist frequency
/// for which `‖T_{1-(1-F(u))^r}‖ ≤ 1 - margin` for every sample.
pub fn choose_m<T: Real>(radius: T, r: u32, s: T, samples: &[Field<T>]) -> Result<NormProbe> {
    let Some(first) = samples.first() else {
        return Err(Error::invalid("choose_m needs at least one sample"));
    };
    if r < 1 {
        return Err(Error::invalid("choose_m needs r >= 1"));
    }
    if !(s > T::of(0.5)) {
        return Err(Error::invalid(format!("choose_m needs s > 1/2, got {s}")));
    }
    for (i, u) in samples.iter().enumerate() {
        first.grid().ensure_same(u.grid(), "choose_m")?;
        let n = sobolev_norm(u, s);
        if n > radius * (T::one() + T::of(1e-12)) {
            return Err(Error::invalid(format!("sample {i} has H^s norm {n} above R = {radius}")));
        }
    }
    let g = first.grid();
    let symbols: Vec<Field<T>> = samples.iter().map(|u| energy_symbol(u, r)).collect();
    let lo = g.xi_step().to_f64_lossy().log2().ceil() as i32;
    let hi = g.nyquist().to_f64_lossy().log2().floor() as i32;
    let limit = 1.0 - CHOOSE_M_MARGIN;
    let mut trace = Vec::new();
    for k in lo..=hi {
        let m = 2f64.powi(k);
        let cutoff = ParaCutoff::new(T::of(m))?;
        let norms = symbols
            .iter()
            .map(|a| operator_norm(a, &cutoff).map(|v| v.to_f64_lossy()))
            .collect::<Result<Vec<_>>>()?;
        let worst = norms.iter().copied().fold(0.0, f64::max);
        trace.push((m, worst));
        if worst <= limit {
            return Ok(NormProbe {
                chosen_m: m,
                r,
                s: s.to_f64_lossy(),
                radius: radius.to_f64_lossy(),
                samples: samples.len(),
                trace,
                norms,
                margin: CHOOSE_M_MARGIN,
            });
        }
    }
    Err(Error::numerical(format!("no dyadic M up to the Nyquist frequency reaches norm <= {limit}; trace (M, norm): {trace:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::GridSpec;

    #[test]
    fn zero_and_one() {
        let g = GridSpec::new(8.0, 64).unwrap();
        let c = ParaCutoff::new(2.0).unwrap();
        assert_eq!(operator_norm(&Field::zeros(&g), &c).unwrap(), 0.0);
        let one: f64 = operator_norm(&Field::constant(&g, 1.0), &c).unwrap();
        assert!((one - 1.0).abs() < 1e-6, "{one}");
    }

    #[test]
    fn zero_sample_takes_the_first_m() {
        let g = GridSpec::new(8.0, 64).unwrap();
        let probe = choose_m(1.0, 1, 3.0, &[Field::zeros(&g)]).unwrap();
        assert_eq!(probe.trace.len(), 1);
        assert_eq!(probe.chosen_m, 0.5);
        assert_eq!(probe.achieved(), 0.0);
    }

    #[test]
    fn samples_outside_the_ball_are_rejected() {
        let g = GridSpec::new(8.0, 64).unwrap();
        let u = Field::from_fn(&g, |x: f64| 3.0 * (-x * x).exp());
        assert!(choose_m(1.0, 1, 3.0, &[u]).is_err());
    }
}
