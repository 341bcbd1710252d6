#![allow(dead_code)]

use fejer_schur::CoefficientVector;
use proptest::prelude::*;

/// Shifts `raw` by a common constant so it sums to one.
pub fn normalize(mut raw: Vec<f64>) -> CoefficientVector {
    let n = raw.len();
    let shift = (1.0 - raw.iter().sum::<f64>()) / n as f64;
    raw.iter_mut().for_each(|x| *x += shift);
    let sum: f64 = raw.iter().sum();
    raw[n - 1] += 1.0 - sum;
    CoefficientVector::new(raw).unwrap()
}

pub fn vector_of_degree(n: usize) -> impl Strategy<Value = CoefficientVector> {
    prop::collection::vec(-1.0..1.0f64, n).prop_map(normalize)
}

pub fn vector(
    degrees: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = CoefficientVector> {
    degrees.prop_flat_map(vector_of_degree)
}

/// Straight `sum a_j cos(j t)`, `sum a_j sin(j t)`.
pub fn naive_pair(a: &[f64], t: f64) -> (f64, f64) {
    a.iter().enumerate().fold((0.0, 0.0), |(c, s), (j, aj)| {
        let jt = (j + 1) as f64 * t;
        (c + aj * jt.cos(), s + aj * jt.sin())
    })
}
