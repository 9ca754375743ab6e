//! The nonlocal operator `A_φ`, its ingredients and its paralinearisation.

mod b0;
mod operator;
mod paralin;
mod pv;
mod quadrature;
mod shape;
pub(crate) mod shifts;

pub use b0::{b0_symbol, b0_symbol_with, B0Rule};
pub use operator::{apply_a, apply_a_with, diff_quotient, linear_term, nonlinear_term, rhs, Oversampling, Quotient};
pub use paralin::paralin_residual;
pub use pv::{pv_split_form, pv_truncated, pv_unit_constant, pv_unit_value, PvConstant};
pub use quadrature::QuadratureScheme;
pub use shape::{f_shape, f_shape_deriv};
