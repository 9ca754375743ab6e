//! `M`-dependent paradifferential quantization, operator-norm probes and
//! the modified energies.

mod cutoff;
mod energy;
mod norm;
mod quantization;

pub use cutoff::ParaCutoff;
pub use energy::{modified_energy, ModifiedEnergy};
pub use norm::{
    choose_m, energy_symbol, matrix_norm, norm_bound, operator_norm, split_symbol, NormBound, NormProbe, CHOOSE_M_MARGIN,
    POWER_MAX_ITER, POWER_TOL,
};
pub use quantization::{apply_ta, ta_matrix, OperatorMatrix, MAX_MATRIX_POINTS};
