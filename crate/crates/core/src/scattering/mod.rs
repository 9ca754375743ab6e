//! Dispersion relation, wave packets, profiles `γ(t, v)`, the cubic resonance
//! constant and the long-time diagnostics built on them.

mod cubic;
mod decay;
mod dispersion;
mod fit;
mod packet;
mod profile;

pub use cubic::{cubic_q, cubic_q_complex, q_constant};
pub use decay::{decay_report, DecayReport, DecayRow};
pub use dispersion::{
    dispersion, dispersion_curvature, dispersion_point, frequency_for_velocity, group_velocity, packet_phase,
    DispersionPoint,
};
pub use fit::{fit_scattering, resonance_rate, ScatteringFit, VelocityFit, RESONANCE_FACTOR};
pub use packet::{band_velocities, build_packet, in_admissible_region, velocity_interval, WavePacket};
pub use profile::{gamma_profile, ProfileRecord, ProfileRow};
