mod common;

use common::vector_of_degree;
use fejer_schur::chaos::{
    closed_loop_eigenvalues, closed_loop_roots, closed_loop_spectral_radius, multiplier_interval,
    simulate, MapSpec,
};
use fejer_schur::trigpoly::optimal_coeffs;
use nalgebra::Complex;
use proptest::prelude::*;

/// Greedy nearest matching of two root lists; returns the worst distance.
fn match_distance(mut x: Vec<Complex<f64>>, y: &[Complex<f64>]) -> f64 {
    let mut worst = 0.0_f64;
    for z in y {
        let (i, d) = x
            .iter()
            .enumerate()
            .map(|(i, w)| (i, (w - z).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        worst = worst.max(d);
        x.swap_remove(i);
    }
    worst
}

fn converges(mu: f64, n: usize) -> bool {
    let a = optimal_coeffs(n).unwrap();
    let map = MapSpec::logistic(2.0 - mu).unwrap();
    let history = vec![map.fixed_point + 1e-3; n];
    simulate(&map, &a, &history, 20_000)
        .map(|t| t.converged)
        .unwrap_or(false)
}

#[test]
fn interval_is_sharp_for_small_horizons() {
    for n in 1..=8 {
        let a = optimal_coeffs(n).unwrap();
        let (lo, hi) = multiplier_interval(n, &a).unwrap();
        assert!((hi - 1.0).abs() < 1e-9);
        assert!(converges(lo + 0.05 * lo.abs(), n), "n={n} inside");
        assert!(!converges(lo - 0.05 * lo.abs(), n), "n={n} outside");
        assert!(closed_loop_spectral_radius(lo + 0.05 * lo.abs(), &a) < 1.0);
        assert!(closed_loop_spectral_radius(lo - 0.05 * lo.abs(), &a) > 1.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn jacobian_matches_family(n in 1usize..=8, r in 1.2..6.0f64, seed in 0usize..1) {
        let _ = seed;
        let a = optimal_coeffs(n).unwrap();
        let map = MapSpec::logistic(r).unwrap();
        let numeric = closed_loop_eigenvalues(&map, &a);
        let exact = closed_loop_roots(map.multiplier, &a);
        prop_assert!(match_distance(numeric, &exact) <= 1e-6);
    }

    #[test]
    fn jacobian_matches_family_random_weights(a in vector_of_degree(4), r in 1.2..4.0f64) {
        let map = MapSpec::cubic(r).unwrap();
        let numeric = closed_loop_eigenvalues(&map, &a);
        let exact = closed_loop_roots(map.multiplier, &a);
        prop_assert!(match_distance(numeric, &exact) <= 1e-6);
    }

    #[test]
    fn traces_keep_history_and_length(r in 2.6..3.9f64, steps in 10usize..200) {
        let a = optimal_coeffs(3).unwrap();
        let map = MapSpec::logistic(r).unwrap();
        let history = [0.3, 0.4, 0.5];
        let t = simulate(&map, &a, &history, steps).unwrap();
        prop_assert_eq!(t.states.len(), 3 + steps);
        prop_assert_eq!(&t.states[..3], &history[..]);
        prop_assert_eq!(t.horizon_n, 3);
    }
}
