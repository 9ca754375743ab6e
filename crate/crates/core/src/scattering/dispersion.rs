use serde::{Deserialize, Serialize};

/// Dispersion relation of the linearised flow, `a(ξ) = -2ξ log|ξ|`.
pub fn dispersion(xi: f64) -> f64 {
    if xi == 0.0 {
        0.0
    } else {
        -2.0 * xi * xi.abs().ln()
    }
}

/// Group velocity `a'(ξ) = -2 - 2 log|ξ|`.
pub fn group_velocity(xi: f64) -> f64 {
    -2.0 - 2.0 * xi.abs().ln()
}

/// `a''(ξ) = -2/ξ`.
pub fn dispersion_curvature(xi: f64) -> f64 {
    -2.0 / xi
}

/// Negative frequency travelling at group velocity `v`.
pub fn frequency_for_velocity(v: f64) -> f64 {
    -(-1.0 - 0.5 * v).exp()
}

/// Stationary phase `φ(v) = v ξ_v - a(ξ_v)`, which reduces to `-2 ξ_v`.
pub fn packet_phase(v: f64) -> f64 {
    -2.0 * frequency_for_velocity(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DispersionPoint {
    pub v: f64,
    pub xi: f64,
    pub a: f64,
    pub a2: f64,
    pub phase: f64,
}

pub fn dispersion_point(v: f64) -> DispersionPoint {
    let xi = frequency_for_velocity(v);
    let a = dispersion(xi);
    DispersionPoint { v, xi, a, a2: dispersion_curvature(xi), phase: v * xi - a }
}
