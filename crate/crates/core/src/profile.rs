//! Smooth compactly supported templates shared by the Littlewood–Paley
//! partition, the paradifferential cutoffs and the wave packets.

use std::sync::OnceLock;

use crate::integrate;

/// The bump `exp(1 - 1/(1 - r^2))` on `|r| < 1`, zero elsewhere. Equals 1 at `r = 0`.
#[inline]
pub fn bump(r: f64) -> f64 {
    let r2 = r * r;
    if r2 >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - r2)).exp()
    }
}

/// Smooth monotone transition: 0 for `tau <= 0`, 1 for `tau >= 1`, C-infinity in between.
#[inline]
pub fn smooth_step(tau: f64) -> f64 {
    if tau <= 0.0 {
        0.0
    } else if tau >= 1.0 {
        1.0
    } else {
        let up = bump(1.0 - tau);
        let down = bump(tau);
        up / (up + down)
    }
}

/// `∫ bump(r) dr` over `[-1, 1]`.
pub fn bump_mass() -> f64 {
    static MASS: OnceLock<f64> = OnceLock::new();
    *MASS.get_or_init(|| {
        integrate::adaptive(bump, -1.0, 1.0, 1e-15, 1e-15).expect("bump integral converges")
    })
}

/// Unit-mass bump: `bump(r) / bump_mass()`.
#[inline]
pub fn unit_bump(r: f64) -> f64 {
    bump(r) / bump_mass()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_limits_and_symmetry() {
        assert_eq!(smooth_step(-0.1), 0.0);
        assert_eq!(smooth_step(1.1), 1.0);
        assert!((smooth_step(0.5) - 0.5).abs() < 1e-15);
        for &t in &[0.1, 0.27, 0.8] {
            assert!((smooth_step(t) + smooth_step(1.0 - t) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn unit_bump_has_unit_mass() {
        let m = integrate::adaptive(unit_bump, -1.0, 1.0, 1e-15, 1e-15).unwrap();
        assert!((m - 1.0).abs() < 1e-13);
        assert_eq!(bump(0.0), 1.0);
    }
}
