//! Time integration, diagnostics along a run, the scaling symmetry and run storage.

mod config;
mod propagator;
mod scaling;
mod stepper;
mod trajectory;

pub use config::{QuadratureParams, SolverConfig};
pub use propagator::linear_propagator;
pub use scaling::scaling_transform;
pub use stepper::{step_ifrk4, Stepper};
pub use trajectory::{
    evolve, mass, read_trajectory, write_monitors, write_trajectory, BlowUp, EvolveError, Monitor, Snapshot,
    SnapshotEntry, Trajectory, TrajectoryManifest,
};
