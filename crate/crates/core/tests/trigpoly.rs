mod common;

use std::f64::consts::PI;

use common::{naive_pair, vector};
use fejer_schur::trigpoly::{from_gamma, to_gamma};
use fejer_schur::GammaVector;
use proptest::prelude::*;

proptest! {
    #[test]
    fn matches_naive_summation(a in vector(1..=64), t in -10.0..10.0f64) {
        let (c, s) = a.eval_pair(t);
        let (c0, s0) = naive_pair(a.as_slice(), t);
        let scale = a.abs_sum().max(1.0);
        prop_assert!((c - c0).abs() <= 1e-12 * scale * a.degree() as f64);
        prop_assert!((s - s0).abs() <= 1e-12 * scale * a.degree() as f64);
    }

    #[test]
    fn parity_and_period(a in vector(1..=24), t in 0.0..PI) {
        let (c, s) = a.eval_pair(t);
        let (cm, sm) = a.eval_pair(-t);
        let (cp, sp) = a.eval_pair(t + 2.0 * PI);
        prop_assert!((c - cm).abs() <= 1e-12 && (s + sm).abs() <= 1e-12);
        prop_assert!((c - cp).abs() <= 1e-11 && (s - sp).abs() <= 1e-11);
    }

    #[test]
    fn endpoints(a in vector(1..=24)) {
        let (c0, s0) = a.eval_pair(0.0);
        prop_assert!((c0 - 1.0).abs() <= 1e-12);
        prop_assert_eq!(s0, 0.0);
        let alternating: f64 = a.as_slice().iter().enumerate()
            .map(|(j, x)| if j % 2 == 0 { -x } else { *x }).sum();
        let (cpi, spi) = a.eval_pair(PI);
        prop_assert!((cpi - alternating).abs() <= 1e-12);
        prop_assert!(spi.abs() <= 1e-12);
    }

    #[test]
    fn gamma_round_trip(a in vector(1..=64)) {
        let g = to_gamma(&a);
        prop_assert!((g.gamma1() + g.gamma2() - 1.0).abs() <= 1e-12);
        let back = from_gamma(&g).unwrap();
        for (x, y) in back.as_slice().iter().zip(a.as_slice()) {
            prop_assert!((x - y).abs() <= 1e-12);
        }
        let again = GammaVector::new(g.as_slice().to_vec()).unwrap();
        prop_assert_eq!(again, g);
    }

    #[test]
    fn sine_factorization(a in vector(1..=32), t in 0.01..3.13f64) {
        let g = to_gamma(&a);
        let q: f64 = g.gamma1()
            + g.as_slice().iter().enumerate().skip(1)
                .map(|(m, gm)| 2.0 * gm * (m as f64 * t).cos()).sum::<f64>();
        let s = a.eval_pair(t).1;
        prop_assert!((s - t.sin() * q).abs() <= 1e-11 * a.abs_sum().max(1.0));
    }

    #[test]
    fn serde_round_trip(a in vector(1..=16)) {
        let text = serde_json::to_string(&a).unwrap();
        let back: fejer_schur::CoefficientVector = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn serde_rejects_unnormalized() {
    assert!(serde_json::from_str::<fejer_schur::CoefficientVector>("[0.5, 0.4]").is_err());
    assert!(serde_json::from_str::<fejer_schur::CoefficientVector>("[]").is_err());
}
