//! Periodic grid, spectra, Fourier multipliers, Littlewood–Paley pieces and norms.

mod envelope;
mod field;
mod grid;
pub mod io;
mod littlewood_paley;
mod multiplier;
mod norms;
mod resample;

pub use envelope::{frequency_envelope, FrequencyEnvelope};
pub use field::{ComplexField, Field};
pub use grid::GridSpec;
pub use littlewood_paley::{bands, low_pass_symbol, lp_project, lp_symbol, DyadicBand, LpProjection};
pub use multiplier::{apply_multiplier, apply_multiplier_with_residue, derivative, spectral_shift, FourierMultiplier};
pub use norms::{boundary_mass_fraction, sobolev_norm, sobolev_norm_checked, x_norm, y_norm, XNorm};
pub use resample::{interpolate_at, resample};
pub(crate) use resample::{common_grid, transfer_spectrum};
