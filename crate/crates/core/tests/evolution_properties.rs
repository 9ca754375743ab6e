mod common;

use common::{bumps, field, reflect, roll};
use proptest::prelude::*;
use sqg_front::evolution::{evolve, mass, SolverConfig};
use sqg_front::{Field64, Grid};
use std::f64::consts::PI;

fn grid() -> Grid {
    Grid::new(8.0 * PI, 256).unwrap()
}

fn solver(t_final: f64) -> SolverConfig {
    SolverConfig { dt: 0.02, t_final, record_stride: 1000, ..SolverConfig::default() }
}

fn final_state(phi0: &Field64, cfg: &SolverConfig) -> Field64 {
    evolve(phi0, cfg).unwrap().last().field.clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn sign_flip_commutes_with_the_flow(b in bumps(0.2, 3.0)) {
        let g = grid();
        let phi0 = field(&g, &b);
        let cfg = solver(0.2);
        let up = final_state(&phi0, &cfg);
        let down = final_state(&phi0.scale(-1.0), &cfg);
        prop_assert!(up.add(&down).unwrap().max_abs() <= 1e-12 * up.max_abs().max(1e-300));
    }

    /// Reflecting space reverses time: running the reflected end state
    /// forward for the same span returns the reflected datum.
    #[test]
    fn reflection_reverses_time(b in bumps(0.2, 3.0)) {
        let g = grid();
        let phi0 = field(&g, &b);
        let cfg = solver(0.2);
        let back = final_state(&reflect(&final_state(&phi0, &cfg)), &cfg);
        let gap = back.rel_l2_distance(&reflect(&phi0)).unwrap();
        prop_assert!(gap <= 1e-8, "relative gap {gap:e}");
    }

    #[test]
    fn grid_shifts_commute_with_the_flow(b in bumps(0.2, 3.0), m in 0usize..256) {
        let g = grid();
        let phi0 = field(&g, &b);
        let cfg = solver(0.2);
        let a = final_state(&roll(&phi0, m), &cfg);
        let b = roll(&final_state(&phi0, &cfg), m);
        prop_assert!(a.sub(&b).unwrap().max_abs() <= 1e-10 * b.max_abs().max(1.0));
    }

    #[test]
    fn mass_is_conserved(b in bumps(0.2, 3.0)) {
        let g = grid();
        let phi0 = field(&g, &b);
        let m0 = mass(&phi0);
        let m1 = mass(&final_state(&phi0, &solver(0.5)));
        prop_assert!((m1 - m0).abs() <= 1e-9 * m0, "drift {:e}, mass {m0:e}", m1 - m0);
    }

    #[test]
    fn linear_flow_keeps_l2_norm(b in bumps(1.0, 3.0)) {
        let g = grid();
        let phi0 = field(&g, &b);
        let cfg = SolverConfig { linear_only: true, ..solver(1.0) };
        let out = final_state(&phi0, &cfg);
        prop_assert!((out.l2_norm() - phi0.l2_norm()).abs() <= 1e-13 * phi0.l2_norm());
    }

    #[test]
    fn runs_are_reproducible_across_pools(b in bumps(0.2, 3.0)) {
        let g = grid();
        let phi0 = field(&g, &b);
        let cfg = solver(0.1);
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| final_state(&phi0, &cfg)).into_values()
        };
        prop_assert_eq!(run(1), run(4));
    }
}
