use proptest::prelude::*;
use sqg_front::scattering::{dispersion_curvature, dispersion_point, group_velocity, q_constant};

#[test]
fn resonance_constant_is_real_and_quadratic() {
    let q1 = q_constant(1.0).unwrap();
    assert!(q1.im.abs() <= 1e-6 * q1.re.abs());
    for xi in [0.5, 2.0, 4.0, -1.0, -2.0] {
        let q = q_constant(xi).unwrap();
        let expected = xi * xi * q1.re;
        assert!((q.re - expected).abs() <= 1e-3 * expected.abs(), "xi = {xi}: {q} vs {expected}");
        assert!(q.im.abs() <= 1e-6 * expected.abs());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn dispersion_identities(v in -10.0f64..10.0) {
        let p = dispersion_point(v);
        prop_assert!(p.xi < 0.0);
        prop_assert!((group_velocity(p.xi) - v).abs() <= 1e-12 * v.abs().max(1.0));
        prop_assert!((p.phase + 2.0 * p.xi).abs() <= 1e-12 * p.xi.abs().max(1.0));
        let h = 1e-5;
        let fd = (dispersion_point(v + h).phase - dispersion_point(v - h).phase) / (2.0 * h);
        prop_assert!((fd - p.xi).abs() <= 1e-8 * p.xi.abs().max(1.0));
        prop_assert!((dispersion_curvature(p.xi) * p.xi + 2.0).abs() <= 1e-12);
    }
}
