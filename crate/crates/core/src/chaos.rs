//! Fixed-point stabilization of 1-D maps by predictive averaging.
//!
//! The controlled iteration is `x_{k+1} = f(a_1 x_k + a_2 x_{k-1} + ... + a_n x_{k-n+1})`.
//! Since `sum a_j = 1`, a fixed point `x*` of `f` stays a fixed point, and the
//! linearization about it has characteristic polynomial
//! `lambda^n - mu (a_1 lambda^(n-1) + ... + a_n)` with `mu = f'(x*)`. That is
//! the stability family with `k = -mu`, so the controlled fixed point is
//! asymptotically stable exactly for `mu` in `(-k2, k1)`.

use nalgebra::{Complex, DMatrix};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eigen;
use crate::rootfind::RootError;
use crate::schur::{family_roots, margins_geometric, spectral_radius};
use crate::tolerances;
use crate::trigpoly::CoefficientVector;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChaosError {
    #[error("map parameter {0} does not admit a nontrivial fixed point")]
    InvalidParameter(f64),
    #[error("fixed-point search from {guess} did not converge")]
    NoFixedPoint { guess: f64 },
    #[error("multiplier {analytic} disagrees with central difference {numeric}")]
    MultiplierMismatch { analytic: f64, numeric: f64 },
    #[error("initial history has length {got}, expected {expected}")]
    HistoryLength { got: usize, expected: usize },
    #[error("steps ({steps}) must be at least the horizon ({horizon})")]
    TooFewSteps { steps: usize, horizon: usize },
    #[error("degree {n} does not match coefficient count {len}")]
    DegreeMismatch { n: usize, len: usize },
    #[error("iteration diverged at step {step} (|x| = {value:e})")]
    Diverged { step: usize, value: f64 },
    #[error(transparent)]
    Roots(#[from] RootError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapKind {
    /// `r x (1 - x)`
    Logistic,
    /// `r x (1 - x^2)`
    Cubic,
    /// `p_0 + p_1 x + ... + p_m x^m`
    CustomPolynomial,
}

/// A 1-D map together with the fixed point to stabilize.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapSpec {
    pub kind: MapKind,
    pub params: Vec<f64>,
    pub fixed_point: f64,
    pub multiplier: f64,
}

fn poly_eval(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

fn poly_slope(p: &[f64], x: f64) -> f64 {
    p.iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(0.0, |acc, (i, c)| acc * x + i as f64 * c)
}

impl MapSpec {
    pub fn logistic(r: f64) -> Result<Self, ChaosError> {
        if !r.is_finite() || r == 0.0 {
            return Err(ChaosError::InvalidParameter(r));
        }
        Self::checked(MapKind::Logistic, vec![r], 1.0 - 1.0 / r, 2.0 - r)
    }

    pub fn cubic(r: f64) -> Result<Self, ChaosError> {
        if !(r.is_finite() && r > 1.0) {
            return Err(ChaosError::InvalidParameter(r));
        }
        Self::checked(
            MapKind::Cubic,
            vec![r],
            (1.0 - 1.0 / r).sqrt(),
            3.0 - 2.0 * r,
        )
    }

    /// Polynomial map with ascending coefficients; the fixed point is located
    /// by Newton iteration on `f(x) - x` from `guess`.
    pub fn custom_polynomial(coeffs: Vec<f64>, guess: f64) -> Result<Self, ChaosError> {
        if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) || !guess.is_finite() {
            return Err(ChaosError::NoFixedPoint { guess });
        }
        let mut x = guess;
        for _ in 0..100 {
            let g = poly_eval(&coeffs, x) - x;
            let slope = poly_slope(&coeffs, x) - 1.0;
            if g.abs() <= 1e-15 * x.abs().max(1.0) || slope == 0.0 {
                break;
            }
            x -= g / slope;
            if !x.is_finite() {
                return Err(ChaosError::NoFixedPoint { guess });
            }
        }
        let multiplier = poly_slope(&coeffs, x);
        Self::checked(MapKind::CustomPolynomial, coeffs, x, multiplier)
    }

    fn checked(
        kind: MapKind,
        params: Vec<f64>,
        fixed_point: f64,
        multiplier: f64,
    ) -> Result<Self, ChaosError> {
        let map = Self {
            kind,
            params,
            fixed_point,
            multiplier,
        };
        if (map.eval(fixed_point) - fixed_point).abs() > tolerances::FIXED_POINT {
            return Err(ChaosError::NoFixedPoint { guess: fixed_point });
        }
        let h = tolerances::DIFFERENCE_STEP;
        let numeric = (map.eval(fixed_point + h) - map.eval(fixed_point - h)) / (2.0 * h);
        if (numeric - multiplier).abs() > 1e-8 * multiplier.abs().max(1.0) {
            return Err(ChaosError::MultiplierMismatch {
                analytic: multiplier,
                numeric,
            });
        }
        Ok(map)
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self.kind {
            MapKind::Logistic => self.params[0] * x * (1.0 - x),
            MapKind::Cubic => self.params[0] * x * (1.0 - x * x),
            MapKind::CustomPolynomial => poly_eval(&self.params, x),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationTrace {
    /// Initial history followed by every iterate.
    pub states: Vec<f64>,
    pub converged: bool,
    pub final_error: f64,
    pub horizon_n: usize,
    pub coeffs: CoefficientVector,
    pub fixed_point: f64,
}

fn averaged_input(coeffs: &[f64], states: &[f64]) -> f64 {
    coeffs
        .iter()
        .zip(states.iter().rev())
        .map(|(a, x)| a * x)
        .sum()
}

/// The error envelope over the trailing window, taken as block maxima, must
/// not grow beyond rounding noise. Blocks already at the noise floor
/// [`tolerances::ENVELOPE_FLOOR`] count as settled.
fn envelope_settled(errors: &[f64], scale: f64) -> bool {
    const BLOCK: usize = 10;
    let slack = 4.0 * f64::EPSILON * scale.max(1.0);
    let maxima: Vec<f64> = errors
        .chunks(BLOCK)
        .map(|block| block.iter().copied().fold(0.0, f64::max))
        .collect();
    maxima
        .windows(2)
        .all(|w| w[1] <= w[0] + slack || w[1] <= tolerances::ENVELOPE_FLOOR)
}

/// Runs the controlled iteration for `steps` iterates from the history `x_init`
/// (oldest first, length `n`).
pub fn simulate(
    map: &MapSpec,
    coeffs: &CoefficientVector,
    x_init: &[f64],
    steps: usize,
) -> Result<SimulationTrace, ChaosError> {
    let n = coeffs.degree();
    if x_init.len() != n {
        return Err(ChaosError::HistoryLength {
            got: x_init.len(),
            expected: n,
        });
    }
    if steps < n {
        return Err(ChaosError::TooFewSteps { steps, horizon: n });
    }
    let mut states = Vec::with_capacity(n + steps);
    states.extend_from_slice(x_init);
    for step in 1..=steps {
        let next = map.eval(averaged_input(coeffs.as_slice(), &states));
        if !next.is_finite() || next.abs() > tolerances::DIVERGENCE_BOUND {
            return Err(ChaosError::Diverged {
                step,
                value: next.abs(),
            });
        }
        states.push(next);
    }

    let x_star = map.fixed_point;
    let final_error = (states[states.len() - 1] - x_star).abs();
    let window = tolerances::CONVERGENCE_WINDOW.min(states.len());
    let errors: Vec<f64> = states[states.len() - window..]
        .iter()
        .map(|x| (x - x_star).abs())
        .collect();
    let converged =
        final_error <= tolerances::CONVERGENCE && envelope_settled(&errors, x_star.abs());
    Ok(SimulationTrace {
        states,
        converged,
        final_error,
        horizon_n: n,
        coeffs: coeffs.clone(),
        fixed_point: x_star,
    })
}

/// Open interval `(-k2, k1)` of multipliers stabilized by `coeffs`.
pub fn multiplier_interval(n: usize, coeffs: &CoefficientVector) -> Result<(f64, f64), ChaosError> {
    if coeffs.degree() != n {
        return Err(ChaosError::DegreeMismatch {
            n,
            len: coeffs.degree(),
        });
    }
    Ok(margins_geometric(coeffs)?.multiplier_interval())
}

/// Central-difference Jacobian of the `n`-dimensional update
/// `(x_k, ..., x_{k-n+1}) -> (f(sum a_j x_{k+1-j}), x_k, ..., x_{k-n+2})`
/// at the fixed point.
pub fn linearization(map: &MapSpec, coeffs: &CoefficientVector) -> DMatrix<f64> {
    let n = coeffs.degree();
    let a = coeffs.as_slice();
    let h = tolerances::DIFFERENCE_STEP;
    let update = |state: &[f64]| -> Vec<f64> {
        // state[0] is the newest entry
        let input: f64 = a.iter().zip(state).map(|(aj, x)| aj * x).sum();
        let mut next = Vec::with_capacity(n);
        next.push(map.eval(input));
        next.extend_from_slice(&state[..n - 1]);
        next
    };
    let base = vec![map.fixed_point; n];
    let mut jacobian = DMatrix::zeros(n, n);
    for col in 0..n {
        let mut plus = base.clone();
        let mut minus = base.clone();
        plus[col] += h;
        minus[col] -= h;
        let (fp, fm) = (update(&plus), update(&minus));
        for row in 0..n {
            jacobian[(row, col)] = (fp[row] - fm[row]) / (2.0 * h);
        }
    }
    jacobian
}

/// Eigenvalues of [`linearization`].
pub fn closed_loop_eigenvalues(map: &MapSpec, coeffs: &CoefficientVector) -> Vec<Complex<f64>> {
    eigen::eigenvalues(&linearization(map, coeffs)).expect("Jacobian eigenvalue iteration failed")
}

/// Spectral radius of the linearized closed loop for multiplier `mu`.
pub fn closed_loop_spectral_radius(mu: f64, coeffs: &CoefficientVector) -> f64 {
    spectral_radius(coeffs, -mu)
}

/// Roots of the family polynomial with `k = -mu`.
pub fn closed_loop_roots(mu: f64, coeffs: &CoefficientVector) -> Vec<Complex<f64>> {
    family_roots(coeffs, -mu)
}
