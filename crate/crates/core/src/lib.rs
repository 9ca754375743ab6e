//! Pseudospectral simulator and analysis toolkit for the SQG front equation
//!
//! ```text
//! ∂_t φ = ∫ F(δ^y φ) |δ|^y φ_x dy + 2 log|D| ∂_x φ,    F(s) = 1 - (1 + s²)^{-1/2}
//! ```
//!
//! on a periodic truncation `[-L, L)` of the line. The numerical core is
//! generic over [`Real`] (`f32` or `f64`); the aliases below fix `f64`,
//! which is what every experiment and test uses.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod evolution;
pub mod front;
pub mod harness;
pub mod integrate;
pub mod paradiff;
pub mod profile;
pub mod scalar;
pub mod scattering;
pub mod spectral;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Grid = spectral::GridSpec<f64>;
pub type Field64 = spectral::Field<f64>;
pub type Field32 = spectral::Field<f32>;
pub type Grid32 = spectral::GridSpec<f32>;
