mod common;

use std::f64::consts::PI;

use common::vector;
use fejer_schur::deflation::{deflate_once, deflate_twice};
use fejer_schur::rootfind::zero_set;
use proptest::prelude::*;

const TOL: f64 = 1e-9;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn single_deflation_round_trip(a in vector(2..=16), probe in 0.0..PI) {
        let zs = zero_set(&a).unwrap();
        for z in zs.interior() {
            let d = deflate_once(&a, z.t).unwrap();
            prop_assert_eq!(d.a_prime.len(), a.degree() - 1);
            let (c, s) = a.eval_pair(probe);
            prop_assert!((d.reconstruct_s(probe) - s).abs() <= TOL);
            prop_assert!((d.reconstruct_c(probe) - c).abs() <= TOL);
            prop_assert!(d.normalization_residual().abs() <= TOL);
            prop_assert!((d.c_at_root() - z.c_value).abs() <= TOL);
            prop_assert!((d.c_at_pi() - zs.at_pi().c_value).abs() <= TOL);
        }
    }

    #[test]
    fn double_deflation_is_order_independent(a in vector(3..=16), probe in 0.0..PI) {
        let zs = zero_set(&a).unwrap();
        let inner = zs.interior();
        prop_assume!(inner.len() >= 2);
        let (z0, z1) = (inner[0], inner[inner.len() - 1]);
        let d01 = deflate_twice(&a, z0.t, z1.t).unwrap();
        let d10 = deflate_twice(&a, z1.t, z0.t).unwrap();
        for (x, y) in d01.a_dprime.iter().zip(&d10.a_dprime) {
            prop_assert!((x - y).abs() <= TOL);
        }
        prop_assert!((d01.reconstruct_s(probe) - a.eval_pair(probe).1).abs() <= TOL);
        prop_assert!(d01.normalization_residual().abs() <= TOL);
        let (c0, c1) = d01.c_at_roots();
        prop_assert!((c0 - z0.c_value).abs() <= TOL);
        prop_assert!((c1 - z1.c_value).abs() <= TOL);
    }

    #[test]
    fn chained_single_deflations_agree_with_double(a in vector(3..=12)) {
        let zs = zero_set(&a).unwrap();
        let inner = zs.interior();
        prop_assume!(inner.len() >= 2);
        let (t0, t1) = (inner[0].t, inner[1].t);
        let once = deflate_once(&a, t0).unwrap();
        let twice = deflate_twice(&a, t0, t1).unwrap();
        // the reduced polynomial still vanishes at t1
        prop_assert!((once.reconstruct_s(t1)).abs() <= TOL);
        for t in [0.3, 1.1, 2.7] {
            prop_assert!((once.reconstruct_s(t) - twice.reconstruct_s(t)).abs() <= TOL);
        }
    }
}

#[test]
fn rejects_non_roots() {
    let a = fejer_schur::CoefficientVector::new(vec![0.5, 0.5]).unwrap();
    assert!(deflate_once(&a, 1.0).is_err());
    assert!(deflate_once(&a, 0.0).is_err());
    assert!(deflate_once(&a, 4.0).is_err());
}
