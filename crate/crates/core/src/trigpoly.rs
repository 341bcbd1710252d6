//! Conjugate trigonometric polynomial pairs and their coefficient transforms.
//!
//! A [`CoefficientVector`] `a` defines `C(t) = sum a_j cos(j t)` and
//! `S(t) = sum a_j sin(j t)`. The gamma transform `gamma_j = a_j + a_{j+2} + ...`
//! rewrites the sine polynomial as
//!
//! ```text
//! S(t) = sin t * (gamma_1 + 2 gamma_2 cos t + ... + 2 gamma_n cos((n-1) t))
//! ```
//!
//! so the zeros of `S` inside `(0, pi)` are the zeros of a cosine polynomial,
//! a Chebyshev series in `c = cos t`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tolerances;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TrigError {
    #[error("degree must be at least 1")]
    EmptyCoefficients,
    #[error("coefficients must be finite")]
    NonFinite,
    #[error(
        "coefficients sum to {sum}, expected 1 within {:e}",
        tolerances::NORMALIZATION
    )]
    NotNormalized { sum: f64 },
    #[error(
        "gamma_1 + gamma_2 = {sum}, expected 1 within {:e}",
        tolerances::NORMALIZATION
    )]
    GammaNotNormalized { sum: f64 },
    #[error("degree must be at least 1, got {0}")]
    InvalidDegree(usize),
    #[error("angle {t} is outside (0, pi)")]
    OutOfDomain { t: f64 },
    #[error("angle {t} lies within the guard band of the removable singularity at {singular}")]
    NearSingularity { t: f64, singular: f64 },
    #[error("epsilon must be positive and finite, got {0}")]
    InvalidEpsilon(f64),
    #[error("grid points must be strictly increasing and lie in [0, pi]")]
    InvalidGrid,
}

/// Normalized coefficients `(a_1, ..., a_n)` with `sum a_j = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct CoefficientVector {
    coeffs: Vec<f64>,
}

impl CoefficientVector {
    /// Validates normalization; vectors off by more than
    /// [`tolerances::NORMALIZATION`] are rejected, never rescaled.
    pub fn new(coeffs: Vec<f64>) -> Result<Self, TrigError> {
        if coeffs.is_empty() {
            return Err(TrigError::EmptyCoefficients);
        }
        if coeffs.iter().any(|a| !a.is_finite()) {
            return Err(TrigError::NonFinite);
        }
        let sum: f64 = coeffs.iter().sum();
        if (sum - 1.0).abs() > tolerances::NORMALIZATION {
            return Err(TrigError::NotNormalized { sum });
        }
        Ok(Self { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn abs_sum(&self) -> f64 {
        self.coeffs.iter().map(|a| a.abs()).sum()
    }

    /// `(C(t), S(t))`.
    pub fn eval_pair(&self, t: f64) -> (f64, f64) {
        conjugate_pair(&self.coeffs, t)
    }

    pub fn to_gamma(&self) -> GammaVector {
        GammaVector {
            gamma: tail_sums(&self.coeffs),
        }
    }

    /// Chebyshev coefficients `[gamma_1, 2 gamma_2, ..., 2 gamma_n]` of the
    /// cosine part `Q(c) = S(t) / sin t` with `c = cos t`.
    pub fn cosine_part(&self) -> Vec<f64> {
        cosine_part(&self.coeffs)
    }
}

impl TryFrom<Vec<f64>> for CoefficientVector {
    type Error = TrigError;

    fn try_from(coeffs: Vec<f64>) -> Result<Self, Self::Error> {
        Self::new(coeffs)
    }
}

impl From<CoefficientVector> for Vec<f64> {
    fn from(v: CoefficientVector) -> Self {
        v.coeffs
    }
}

/// Image `(gamma_1, ..., gamma_n)` of a coefficient vector under the gamma
/// transform. For `n = 1` the missing `gamma_2` reads as zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct GammaVector {
    gamma: Vec<f64>,
}

impl GammaVector {
    pub fn new(gamma: Vec<f64>) -> Result<Self, TrigError> {
        if gamma.is_empty() {
            return Err(TrigError::EmptyCoefficients);
        }
        if gamma.iter().any(|g| !g.is_finite()) {
            return Err(TrigError::NonFinite);
        }
        let sum = gamma[0] + gamma.get(1).copied().unwrap_or(0.0);
        if (sum - 1.0).abs() > tolerances::NORMALIZATION {
            return Err(TrigError::GammaNotNormalized { sum });
        }
        Ok(Self { gamma })
    }

    pub fn degree(&self) -> usize {
        self.gamma.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.gamma
    }

    pub fn gamma1(&self) -> f64 {
        self.gamma[0]
    }

    pub fn gamma2(&self) -> f64 {
        self.gamma.get(1).copied().unwrap_or(0.0)
    }

    /// Inverse transform, `a_j = gamma_j - gamma_{j+2}`.
    pub fn to_coefficients(&self) -> Result<CoefficientVector, TrigError> {
        let n = self.gamma.len();
        let coeffs = (0..n)
            .map(|j| self.gamma[j] - self.gamma.get(j + 2).copied().unwrap_or(0.0))
            .collect();
        CoefficientVector::new(coeffs)
    }
}

impl TryFrom<Vec<f64>> for GammaVector {
    type Error = TrigError;

    fn try_from(gamma: Vec<f64>) -> Result<Self, Self::Error> {
        Self::new(gamma)
    }
}

impl From<GammaVector> for Vec<f64> {
    fn from(v: GammaVector) -> Self {
        v.gamma
    }
}

pub fn to_gamma(coeffs: &CoefficientVector) -> GammaVector {
    coeffs.to_gamma()
}

pub fn from_gamma(gamma: &GammaVector) -> Result<CoefficientVector, TrigError> {
    gamma.to_coefficients()
}

/// Sampled values of `C` and `S` on an increasing grid in `[0, pi]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationGrid {
    pub points: Vec<f64>,
    pub values_c: Vec<f64>,
    pub values_s: Vec<f64>,
}

impl EvaluationGrid {
    pub fn sample(coeffs: &CoefficientVector, points: Vec<f64>) -> Result<Self, TrigError> {
        let in_range = points.iter().all(|t| (0.0..=PI).contains(t));
        let increasing = points.windows(2).all(|w| w[0] < w[1]);
        if !in_range || !increasing {
            return Err(TrigError::InvalidGrid);
        }
        let (values_c, values_s) = points.iter().map(|&t| coeffs.eval_pair(t)).unzip();
        Ok(Self {
            points,
            values_c,
            values_s,
        })
    }

    /// `count` equally spaced points strictly inside `(0, pi)`.
    pub fn interior(coeffs: &CoefficientVector, count: usize) -> Self {
        let step = PI / (count as f64 + 1.0);
        let points = (1..=count).map(|i| i as f64 * step).collect();
        Self::sample(coeffs, points).expect("interior grid is increasing and in range")
    }

    pub fn min_s(&self) -> f64 {
        self.values_s.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// `(sum a_j cos(j t), sum a_j sin(j t))` by backward Clenshaw summation.
///
/// Both sums share the three-term recurrence `phi_{j+1} = 2 cos t phi_j - phi_{j-1}`,
/// so one backward pass yields `C = b_1 cos t - b_2` and `S = b_1 sin t`.
pub fn conjugate_pair(coeffs: &[f64], t: f64) -> (f64, f64) {
    let t = t.rem_euclid(2.0 * PI);
    let (sin_t, cos_t) = t.sin_cos();
    let two_cos = 2.0 * cos_t;
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for &a in coeffs.iter().rev() {
        let b0 = a + two_cos * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    (b1 * cos_t - b2, b1 * sin_t)
}

/// `gamma_j = a_j + a_{j+2} + a_{j+4} + ...`
pub(crate) fn tail_sums(coeffs: &[f64]) -> Vec<f64> {
    let n = coeffs.len();
    let mut gamma = vec![0.0; n];
    for j in (0..n).rev() {
        gamma[j] = coeffs[j] + gamma.get(j + 2).copied().unwrap_or(0.0);
    }
    gamma
}

pub(crate) fn cosine_part(coeffs: &[f64]) -> Vec<f64> {
    let mut q = tail_sums(coeffs);
    for g in q.iter_mut().skip(1) {
        *g *= 2.0;
    }
    q
}

/// Value and derivative of the Chebyshev series `sum q_k T_k(c)`.
pub(crate) fn chebyshev_eval(q: &[f64], c: f64) -> (f64, f64) {
    let two_c = 2.0 * c;
    let (mut b1, mut b2) = (0.0, 0.0);
    for &qk in q.iter().skip(1).rev() {
        let b0 = qk + two_c * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    let value = q.first().copied().unwrap_or(0.0) + c * b1 - b2;

    // T_k' = k U_{k-1}; sum_k k q_k U_{k-1}(c) by the same recurrence.
    let (mut d1, mut d2) = (0.0, 0.0);
    for (k, &qk) in q.iter().enumerate().skip(1).rev() {
        let d0 = k as f64 * qk + two_c * d1 - d2;
        d2 = d1;
        d1 = d0;
    }
    (value, d1)
}

/// Closed-form optimal coefficients
/// `a_j = 2 tan(pi/(2(n+1))) (1 - j/(n+1)) sin(pi j/(n+1))`.
pub fn optimal_coeffs(n: usize) -> Result<CoefficientVector, TrigError> {
    if n == 0 {
        return Err(TrigError::InvalidDegree(n));
    }
    let m = n as f64 + 1.0;
    let scale = 2.0 * (PI / (2.0 * m)).tan();
    let coeffs = (1..=n)
        .map(|j| {
            let j = j as f64;
            scale * (1.0 - j / m) * (PI * j / m).sin()
        })
        .collect();
    CoefficientVector::new(coeffs)
}

/// Closed-form gamma image of [`optimal_coeffs`]:
///
/// ```text
/// gamma_j = ((n-j+3) sin(pi j/(n+1)) - (n-j+1) sin(pi (j-2)/(n+1)))
///           / (2 (n+1) sin(pi/(n+1)) (1 + cos(pi/(n+1))))
/// ```
pub fn optimal_gamma(n: usize) -> Result<GammaVector, TrigError> {
    if n == 0 {
        return Err(TrigError::InvalidDegree(n));
    }
    let m = n as f64 + 1.0;
    let step = PI / m;
    let denom = 2.0 * m * step.sin() * (1.0 + step.cos());
    let gamma = (1..=n)
        .map(|j| {
            let jf = j as f64;
            let lead = (m - jf + 2.0) * (step * jf).sin();
            let trail = (m - jf) * (step * (jf - 2.0)).sin();
            (lead - trail) / denom
        })
        .collect();
    GammaVector::new(gamma)
}

/// The Fejer-kernel form of `S0(t) / sin t` for the optimal coefficients:
///
/// ```text
/// (1 - cos(pi/(n+1))) / (n+1) * 2 cos^2((n+1) t / 2) / (cos t - cos(pi/(n+1)))^2
/// ```
///
/// Numerator and denominator both vanish at `t = pi/(n+1)`; points within
/// [`tolerances::FEJER_GUARD`] of it are rejected. For `n = 1` the ratio is
/// identically one.
pub fn fejer_closed_form(n: usize, t: f64) -> Result<f64, TrigError> {
    if n == 0 {
        return Err(TrigError::InvalidDegree(n));
    }
    if !(t > 0.0 && t < PI) {
        return Err(TrigError::OutOfDomain { t });
    }
    if n == 1 {
        return Ok(1.0);
    }
    let m = n as f64 + 1.0;
    let singular = PI / m;
    if (t - singular).abs() < tolerances::FEJER_GUARD {
        return Err(TrigError::NearSingularity { t, singular });
    }
    let cos_node = singular.cos();
    let numerator = 2.0 * (0.5 * m * t).cos().powi(2);
    let denominator = (t.cos() - cos_node).powi(2);
    Ok((1.0 - cos_node) / m * numerator / denominator)
}

/// Perturbation of the optimal coefficients toward `sin t`:
/// `a_1 = (a_1^0 + eps)/(1 + eps)`, `a_j = a_j^0/(1 + eps)` for `j >= 2`.
pub fn epsilon_family(n: usize, eps: f64) -> Result<CoefficientVector, TrigError> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(TrigError::InvalidEpsilon(eps));
    }
    let mut coeffs = optimal_coeffs(n)?.into_vec();
    coeffs[0] += eps;
    for a in &mut coeffs {
        *a /= 1.0 + eps;
    }
    CoefficientVector::new(coeffs)
}
