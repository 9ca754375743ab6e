mod common;

use common::{bumps, field};
use proptest::prelude::*;
use sqg_front::paradiff::{apply_ta, modified_energy, ta_matrix, ParaCutoff};
use sqg_front::spectral::sobolev_norm;
use sqg_front::Grid;
use std::f64::consts::PI;

fn grid() -> Grid {
    Grid::new(4.0 * PI, 64).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn real_symbols_quantize_to_hermitian_matrices(a in bumps(2.0, 3.0), m in 0.25f64..4.0) {
        let g = grid();
        let mat = ta_matrix(&field(&g, &a), &ParaCutoff::new(m).unwrap()).unwrap();
        prop_assert!(mat.hermitian_defect() < 1e-12);
    }

    #[test]
    fn output_avoids_low_frequencies(a in bumps(2.0, 3.0), u in bumps(2.0, 3.0), m in 0.5f64..4.0) {
        let g = grid();
        let out = apply_ta(&field(&g, &a), &field(&g, &u), &ParaCutoff::new(m).unwrap()).unwrap();
        for (c, &xi) in out.spectrum().iter().zip(g.wavenumbers()) {
            if xi.abs() <= m / 2.0 {
                prop_assert_eq!(c.norm(), 0.0);
            }
        }
    }

    #[test]
    fn linear_in_u_and_additive_in_a(
        a1 in bumps(2.0, 3.0), a2 in bumps(2.0, 3.0), u1 in bumps(2.0, 3.0), u2 in bumps(2.0, 3.0), k in -3.0f64..3.0,
    ) {
        let g = grid();
        let c = ParaCutoff::new(1.0).unwrap();
        let (a1, a2, u1, u2) = (field(&g, &a1), field(&g, &a2), field(&g, &u1), field(&g, &u2));
        let ta = |a: &sqg_front::Field64, u: &sqg_front::Field64| apply_ta(a, u, &c).unwrap();

        let lhs = ta(&a1, &u1.add(&u2.scale(k)).unwrap());
        let rhs = ta(&a1, &u1).add(&ta(&a1, &u2).scale(k)).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().l2_norm() <= 1e-12 * (1.0 + lhs.l2_norm()));

        let lhs = ta(&a1.add(&a2).unwrap(), &u1);
        let rhs = ta(&a1, &u1).add(&ta(&a2, &u1)).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().l2_norm() <= 1e-12 * (1.0 + lhs.l2_norm()));
    }

    #[test]
    fn modified_energy_is_nonnegative(p in bumps(1.0, 3.0), v in bumps(2.0, 3.0)) {
        let g = grid();
        let phi = field(&g, &p);
        let phi = phi.scale(1.0 / sobolev_norm(&phi, 3.0));
        let e = modified_energy(&phi, &field(&g, &v), 3.0, &ParaCutoff::new(0.25).unwrap()).unwrap();
        prop_assert!(e.top >= 0.0 && e.base >= 0.0, "top {}, base {}", e.top, e.base);
    }
}
