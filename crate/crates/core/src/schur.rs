//! Schur stability margins of the family `lambda^n + k (a_1 lambda^(n-1) + ... + a_n)`.
//!
//! On the unit circle, `f(e^{it}) / (k e^{int}) = 1/k + C(t) - i S(t)`, so a
//! root reaches the circle exactly when `S(t) = 0` and `C(t) = -1/k`. Moving
//! `k` away from zero, stability is first lost at the zero of `S` whose `C`
//! value is most negative (for `k > 0`) or most positive (for `k < 0`) among
//! the zeros where the curve `(C, -S)` actually crosses the real axis. At a
//! tangential zero of `S` a root only touches the circle for that single `k`
//! and returns inside; such values are reported as touch points.

use nalgebra::{Complex, DMatrix};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eigen;
use crate::rootfind::{zero_set, RootError};
use crate::tolerances;
use crate::trigpoly::CoefficientVector;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SchurError {
    #[error(transparent)]
    Roots(#[from] RootError),
    #[error("bisection tolerance {0} outside [1e-12, 1e-3]")]
    InvalidTolerance(f64),
    #[error("the k = 0 polynomial was not detected as stable")]
    UnstableAtZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MarginMethod {
    Geometric,
    Bisection,
}

/// The robust stability segment `(-k1, k2)` and its length `phi = k1 + k2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityMargins {
    pub k1: f64,
    pub k2: f64,
    pub phi: f64,
    pub method: MarginMethod,
    /// Set when a margin hit [`tolerances::BISECTION_CAP`] (bisection) or no
    /// bounding zero exists (geometric).
    pub unbounded: bool,
    /// Isolated `k` inside `(-k1, k2)` at which a root touches the unit circle
    /// without leaving the disk.
    pub touch_points: Vec<f64>,
}

impl StabilityMargins {
    fn new(
        k1: f64,
        k2: f64,
        method: MarginMethod,
        unbounded: bool,
        touch_points: Vec<f64>,
    ) -> Self {
        Self {
            k1,
            k2,
            phi: k1 + k2,
            method,
            unbounded,
            touch_points,
        }
    }

    /// Open interval of multipliers `mu = -k` for which the family is stable.
    pub fn multiplier_interval(&self) -> (f64, f64) {
        (-self.k2, self.k1)
    }
}

/// Margins from the zeros of `S`: `k2 = -1 / min C` and `k1 = 1 / max C` over
/// the crossing zeros, skipping zeros with `|C| <= MARGIN_ZERO_C`.
pub fn margins_geometric(coeffs: &CoefficientVector) -> Result<StabilityMargins, RootError> {
    let zeros = zero_set(coeffs)?;
    let last = zeros.zeros.len() - 1;
    let cutoff = tolerances::MARGIN_ZERO_C;

    let (mut lowest, mut highest) = (f64::INFINITY, f64::NEG_INFINITY);
    for (i, z) in zeros.zeros.iter().enumerate() {
        // f(1) = 1 + k and f(-1) = (-1)^n (1 + k C(pi)) change sign with k,
        // so both endpoints always cross
        if i == 0 || i == last || z.sign_change {
            lowest = lowest.min(z.c_value);
            highest = highest.max(z.c_value);
        }
    }
    let mut unbounded = false;
    let k2 = if lowest < -cutoff {
        -1.0 / lowest
    } else {
        unbounded = true;
        f64::INFINITY
    };
    let k1 = if highest > cutoff {
        1.0 / highest
    } else {
        unbounded = true;
        f64::INFINITY
    };

    let mut touch_points: Vec<f64> = zeros
        .interior()
        .iter()
        .filter(|z| !z.sign_change && z.c_value.abs() > cutoff)
        .map(|z| -1.0 / z.c_value)
        .filter(|&k| k > -k1 && k < k2)
        .collect();
    touch_points.sort_by(f64::total_cmp);
    touch_points.dedup();

    Ok(StabilityMargins::new(
        k1,
        k2,
        MarginMethod::Geometric,
        unbounded,
        touch_points,
    ))
}

/// Roots of `lambda^n + k (a_1 lambda^(n-1) + ... + a_n)` as companion-matrix eigenvalues.
pub fn family_roots(coeffs: &CoefficientVector, k: f64) -> Vec<Complex<f64>> {
    let a = coeffs.as_slice();
    let n = a.len();
    if k == 0.0 {
        return vec![Complex::new(0.0, 0.0); n];
    }
    let mut companion = DMatrix::zeros(n, n);
    for j in 0..n {
        companion[(0, j)] = -k * a[j];
    }
    for i in 1..n {
        companion[(i, i - 1)] = 1.0;
    }
    eigen::eigenvalues(&companion).expect("companion eigenvalue iteration failed")
}

pub fn spectral_radius(coeffs: &CoefficientVector, k: f64) -> f64 {
    family_roots(coeffs, k)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// All roots strictly inside the unit disk, with margin
/// [`tolerances::UNIT_CIRCLE_STRICTNESS`].
pub fn is_schur_stable(coeffs: &CoefficientVector, k: f64) -> bool {
    if !k.is_finite() {
        return false;
    }
    spectral_radius(coeffs, k) < 1.0 - tolerances::UNIT_CIRCLE_STRICTNESS
}

/// First `|k|` in direction `sign` at which stability is lost, located by a
/// geometric scan from a Rouche-safe start followed by bisection.
fn first_instability(coeffs: &CoefficientVector, sign: f64, tol: f64) -> (f64, bool) {
    let stable = |magnitude: f64| is_schur_stable(coeffs, sign * magnitude);
    // |k| sum|a_j| < 1 keeps every root inside the disk
    let mut lo = 0.999 / coeffs.abs_sum();
    let mut hi = lo;
    loop {
        if hi > tolerances::BISECTION_CAP {
            return (tolerances::BISECTION_CAP, true);
        }
        if !stable(hi) {
            break;
        }
        lo = hi;
        hi *= tolerances::BRACKET_GROWTH;
    }
    if lo == hi {
        lo = 0.0;
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if stable(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (0.5 * (lo + hi), false)
}

/// Margins located directly on the stability indicator, independent of the
/// zero set of `S`.
pub fn margins_bisection(
    coeffs: &CoefficientVector,
    tol: f64,
) -> Result<StabilityMargins, SchurError> {
    if !(1e-12..=1e-3).contains(&tol) {
        return Err(SchurError::InvalidTolerance(tol));
    }
    if !is_schur_stable(coeffs, 0.0) {
        return Err(SchurError::UnstableAtZero);
    }
    let (k2, capped2) = first_instability(coeffs, 1.0, tol);
    let (k1, capped1) = first_instability(coeffs, -1.0, tol);
    Ok(StabilityMargins::new(
        k1,
        k2,
        MarginMethod::Bisection,
        capped1 || capped2,
        Vec::new(),
    ))
}

/// Largest attainable segment length, `1 / sin^2(pi / (2 (n + 1)))`.
pub fn phi_max(n: usize) -> f64 {
    let half_angle = std::f64::consts::PI / (2.0 * (n as f64 + 1.0));
    1.0 / half_angle.sin().powi(2)
}

/// `cot^2(pi / (2 (n + 1)))`, the optimal upper margin.
pub fn k2_max(n: usize) -> f64 {
    let half_angle = std::f64::consts::PI / (2.0 * (n as f64 + 1.0));
    1.0 / half_angle.tan().powi(2)
}
