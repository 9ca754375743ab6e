#![allow(dead_code)]

use proptest::prelude::*;
use sqg_front::{Field64, Grid};

/// Parameters of a sum of Gaussian bumps `a exp(-(x - c)² / w²)`.
pub type Bumps = Vec<(f64, f64, f64)>;

pub fn bumps(max_amp: f64, max_center: f64) -> impl Strategy<Value = Bumps> {
    prop::collection::vec((-max_amp..max_amp, -max_center..max_center, 0.4f64..1.5), 1..4)
}

pub fn field(grid: &Grid, b: &Bumps) -> Field64 {
    Field64::from_fn(grid, |x| b.iter().map(|&(a, c, w)| a * (-((x - c) / w).powi(2)).exp()).sum())
}

pub fn even_field(grid: &Grid, b: &Bumps) -> Field64 {
    Field64::from_fn(grid, |x| b.iter().map(|&(a, c, w)| a * ((-((x - c) / w).powi(2)).exp() + (-((x + c) / w).powi(2)).exp())).sum())
}

/// `f(-x)` on the grid, which maps `x_j` to `x_{N-j}`.
pub fn reflect(f: &Field64) -> Field64 {
    let v = f.values();
    let n = v.len();
    Field64::new(f.grid(), (0..n).map(|j| v[(n - j) % n]).collect()).unwrap()
}

/// Shift by `m` grid points: `f(x + m h)`.
pub fn roll(f: &Field64, m: usize) -> Field64 {
    let v = f.values();
    let n = v.len();
    Field64::new(f.grid(), (0..n).map(|j| v[(j + m) % n]).collect()).unwrap()
}
