//! Factoring known zeros out of the sine polynomial.
//!
//! If `S(t0) = 0` then `S(t) = (cos t - cos t0) * sum_{j<n} a'_j sin(j t)`.
//! Matching coefficients of `sin(m t)` gives the banded system
//!
//! ```text
//! a_1     = -cos t0 a'_1 + a'_2 / 2
//! a_m     = a'_{m-1} / 2 - cos t0 a'_m + a'_{m+1} / 2      (1 < m < n)
//! a_n     = a'_{n-1} / 2
//! ```
//!
//! which is solved from the bottom row up. The top row is left over and its
//! residual equals `Q(cos t0)`, the cosine part at the deflation point, so it
//! doubles as a consistency check on `t0`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tolerances;
use crate::trigpoly::{chebyshev_eval, conjugate_pair, cosine_part, CoefficientVector};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DeflationError {
    #[error("deflation needs degree at least {needed}, got {degree}")]
    DegreeTooLow { degree: usize, needed: usize },
    #[error("deflation point {t} is outside {domain}")]
    OutOfDomain { t: f64, domain: &'static str },
    #[error("t = {t} is not a zero of the cosine part: |Q(cos t)| = {residual:e}")]
    NotARoot { t: f64, residual: f64 },
    #[error("first-equation residual {residual:e} at t = {t} exceeds tolerance")]
    Inconsistent { t: f64, residual: f64 },
    #[error("deflation points {t0} and {t1} coincide")]
    CoincidentRoots { t0: f64, t1: f64 },
}

/// `S` with one zero `t0` factored out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeflatedForm {
    pub t0: f64,
    /// `a'_1, ..., a'_{n-1}`.
    pub a_prime: Vec<f64>,
    /// Set when `t0 = pi`, where `S` always vanishes and the factorization
    /// additionally needs `Q(-1) = 0`.
    pub at_pi: bool,
    /// Top-row residual of the back-substitution.
    pub residual: f64,
}

impl DeflatedForm {
    /// `C(t0) = -a'_1 / 2`.
    pub fn c_at_root(&self) -> f64 {
        -0.5 * self.a_prime[0]
    }

    /// `C(pi) = -(1 + cos t0)(-a'_1 + a'_2 - ...) - a'_1 / 2`.
    pub fn c_at_pi(&self) -> f64 {
        let alternating: f64 = self
            .a_prime
            .iter()
            .enumerate()
            .map(|(j, a)| if j % 2 == 0 { -a } else { *a })
            .sum();
        -(1.0 + self.t0.cos()) * alternating - 0.5 * self.a_prime[0]
    }

    /// `(cos t - cos t0) * sum a'_j sin(j t)`.
    pub fn reconstruct_s(&self, t: f64) -> f64 {
        (t.cos() - self.t0.cos()) * conjugate_pair(&self.a_prime, t).1
    }

    /// `-a'_1 / 2 + (cos t - cos t0) * sum a'_j cos(j t)`.
    pub fn reconstruct_c(&self, t: f64) -> f64 {
        -0.5 * self.a_prime[0] + (t.cos() - self.t0.cos()) * conjugate_pair(&self.a_prime, t).0
    }

    /// `(1 - cos t0) sum a'_j - 1 - a'_1 / 2`, zero for a normalized source.
    pub fn normalization_residual(&self) -> f64 {
        let sigma: f64 = self.a_prime.iter().sum();
        (1.0 - self.t0.cos()) * sigma - 1.0 - 0.5 * self.a_prime[0]
    }
}

/// `S` with two distinct interior zeros factored out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DoublyDeflatedForm {
    pub t0: f64,
    pub t1: f64,
    /// `a''_1, ..., a''_{n-2}`.
    pub a_dprime: Vec<f64>,
}

impl DoublyDeflatedForm {
    fn a1(&self) -> f64 {
        self.a_dprime[0]
    }

    fn a2(&self) -> f64 {
        self.a_dprime.get(1).copied().unwrap_or(0.0)
    }

    /// `(C(t0), C(t1)) = (-a''_2/4 + a''_1/2 cos t1, -a''_2/4 + a''_1/2 cos t0)`.
    pub fn c_at_roots(&self) -> (f64, f64) {
        let base = -0.25 * self.a2();
        (
            base + 0.5 * self.a1() * self.t1.cos(),
            base + 0.5 * self.a1() * self.t0.cos(),
        )
    }

    pub fn reconstruct_s(&self, t: f64) -> f64 {
        let c = t.cos();
        (c - self.t0.cos()) * (c - self.t1.cos()) * conjugate_pair(&self.a_dprime, t).1
    }

    /// Left side minus right side of
    /// `(1-cos t0)(1-cos t1) sum a''_j - (1 - cos t0 - cos t1) a''_1/2 - a''_2/4 = 1`.
    pub fn normalization_residual(&self) -> f64 {
        let (c0, c1) = (self.t0.cos(), self.t1.cos());
        let sigma: f64 = self.a_dprime.iter().sum();
        (1.0 - c0) * (1.0 - c1) * sigma - (1.0 - c0 - c1) * 0.5 * self.a1() - 0.25 * self.a2() - 1.0
    }
}

/// Cosine part `Q(cos t) = S(t) / sin t` of a raw coefficient slice.
fn cosine_part_at(coeffs: &[f64], t: f64) -> f64 {
    chebyshev_eval(&cosine_part(coeffs), t.cos()).0
}

fn deflate_raw(coeffs: &[f64], t0: f64) -> Result<(Vec<f64>, f64), DeflationError> {
    let n = coeffs.len();
    let q = cosine_part_at(coeffs, t0);
    if q.abs() > tolerances::DEFLATION_ROOT {
        return Err(DeflationError::NotARoot {
            t: t0,
            residual: q.abs(),
        });
    }
    let cos_t0 = t0.cos();
    let mut reduced = vec![0.0; n - 1];
    reduced[n - 2] = 2.0 * coeffs[n - 1];
    for j in (0..n - 2).rev() {
        let above = reduced.get(j + 2).copied().unwrap_or(0.0);
        reduced[j] = 2.0 * (coeffs[j + 1] + cos_t0 * reduced[j + 1] - 0.5 * above);
    }
    let top = -cos_t0 * reduced[0] + 0.5 * reduced.get(1).copied().unwrap_or(0.0);
    let residual = coeffs[0] - top;
    if residual.abs() > tolerances::DEFLATION_RESIDUAL {
        return Err(DeflationError::Inconsistent { t: t0, residual });
    }
    Ok((reduced, residual))
}

/// Factors `(cos t - cos t0)` out of `S`.
///
/// `t0` must lie in `(0, pi]` and be a zero of the cosine part; `t0 = pi`
/// is admitted only when `Q(-1) = 0` and is flagged on the result.
pub fn deflate_once(coeffs: &CoefficientVector, t0: f64) -> Result<DeflatedForm, DeflationError> {
    let n = coeffs.degree();
    if n < 2 {
        return Err(DeflationError::DegreeTooLow {
            degree: n,
            needed: 2,
        });
    }
    if !(t0 > 0.0 && t0 <= PI) {
        return Err(DeflationError::OutOfDomain {
            t: t0,
            domain: "(0, pi]",
        });
    }
    let (a_prime, residual) = deflate_raw(coeffs.as_slice(), t0)?;
    Ok(DeflatedForm {
        t0,
        a_prime,
        at_pi: t0 == PI,
        residual,
    })
}

pub fn c_at_root(d: &DeflatedForm) -> f64 {
    d.c_at_root()
}

pub fn c_at_pi(d: &DeflatedForm) -> f64 {
    d.c_at_pi()
}

/// Factors both `(cos t - cos t0)` and `(cos t - cos t1)` out of `S` by
/// deflating twice. The result does not depend on the order of the roots.
pub fn deflate_twice(
    coeffs: &CoefficientVector,
    t0: f64,
    t1: f64,
) -> Result<DoublyDeflatedForm, DeflationError> {
    let n = coeffs.degree();
    if n < 3 {
        return Err(DeflationError::DegreeTooLow {
            degree: n,
            needed: 3,
        });
    }
    for t in [t0, t1] {
        if !(t > 0.0 && t < PI) {
            return Err(DeflationError::OutOfDomain {
                t,
                domain: "(0, pi)",
            });
        }
    }
    if (t0 - t1).abs() < tolerances::DISTINCT_ROOTS {
        return Err(DeflationError::CoincidentRoots { t0, t1 });
    }
    let (a_prime, _) = deflate_raw(coeffs.as_slice(), t0)?;
    let (a_dprime, _) = deflate_raw(&a_prime, t1)?;
    Ok(DoublyDeflatedForm { t0, t1, a_dprime })
}

pub fn c_at_double_roots(d: &DoublyDeflatedForm) -> (f64, f64) {
    d.c_at_roots()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cv(a: &[f64]) -> CoefficientVector {
        CoefficientVector::new(a.to_vec()).unwrap()
    }

    fn close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() <= tol
    }

    fn assert_reconstructs(a: &CoefficientVector, d: &DeflatedForm) {
        for i in 0..100 {
            let t = -3.0 + 0.0617 * i as f64;
            assert!(
                close(d.reconstruct_s(t), a.eval_pair(t).1, 1e-12),
                "t = {t}"
            );
        }
        assert!(d.normalization_residual().abs() <= 1e-12);
    }

    #[test]
    fn deflate_once_examples() {
        let a = cv(&[0.0, 1.0]);
        let d = deflate_once(&a, PI / 2.0).unwrap();
        assert!(close(d.a_prime[0], 2.0, 1e-15));
        assert_reconstructs(&a, &d);

        let a = cv(&[2.0 / 3.0, 1.0 / 3.0]);
        let d = deflate_once(&a, PI).unwrap();
        assert!(d.at_pi);
        assert!(close(d.a_prime[0], 2.0 / 3.0, 1e-15));
        assert!(close(2.0 * d.a_prime[0], 1.0 + d.a_prime[0] / 2.0, 1e-15));
        assert_reconstructs(&a, &d);

        let a = cv(&[0.0, 0.0, 1.0]);
        let d = deflate_once(&a, PI / 3.0).unwrap();
        assert!(close(d.a_prime[0], 2.0, 1e-14) && close(d.a_prime[1], 2.0, 1e-14));
        assert_reconstructs(&a, &d);
    }

    #[test]
    fn deflate_once_rejects_non_roots() {
        let a = cv(&[0.0, 0.0, 1.0]);
        assert!(matches!(
            deflate_once(&a, 1.0),
            Err(DeflationError::NotARoot { .. })
        ));
        // S(pi) = 0 always, but Q(-1) = 1/3 here
        let a = cv(&[1.0 / 3.0, 2.0 / 3.0]);
        assert!(matches!(
            deflate_once(&a, PI),
            Err(DeflationError::NotARoot { .. })
        ));
        assert!(matches!(
            deflate_once(&cv(&[1.0]), PI),
            Err(DeflationError::DegreeTooLow { .. })
        ));
        assert!(matches!(
            deflate_once(&cv(&[0.0, 1.0]), 0.0),
            Err(DeflationError::OutOfDomain { .. })
        ));
    }

    #[test]
    fn c_at_root_examples() {
        let d = deflate_once(&cv(&[0.0, 1.0]), PI / 2.0).unwrap();
        assert!(close(c_at_root(&d), -1.0, 1e-15));
        let d = deflate_once(&cv(&[0.0, 0.0, 1.0]), PI / 3.0).unwrap();
        assert!(close(c_at_root(&d), -1.0, 1e-14));
    }

    #[test]
    fn c_at_root_on_optimal_tangential_zero() {
        // S0 for n = 3 vanishes (to second order) at t = 3 pi / 4
        let a = crate::trigpoly::optimal_coeffs(3).unwrap();
        let t0 = 3.0 * PI / 4.0;
        let d = deflate_once(&a, t0).unwrap();
        assert!(close(c_at_root(&d), a.eval_pair(t0).0, 1e-12));
        assert!(close(c_at_pi(&d), a.eval_pair(PI).0, 1e-12));
    }

    #[test]
    fn c_at_pi_examples() {
        let d = deflate_once(&cv(&[0.0, 1.0]), PI / 2.0).unwrap();
        assert!(close(c_at_pi(&d), 1.0, 1e-15));
        let d = deflate_once(&cv(&[0.0, 0.0, 1.0]), PI / 3.0).unwrap();
        assert!(close(c_at_pi(&d), -1.0, 1e-14));
    }

    #[test]
    fn deflate_twice_examples() {
        let a = cv(&[0.0, 0.0, 1.0]);
        let d = deflate_twice(&a, PI / 3.0, 2.0 * PI / 3.0).unwrap();
        assert_eq!(d.a_dprime.len(), 1);
        assert!(close(d.a_dprime[0], 4.0, 1e-14));
        let (c0, c1) = c_at_double_roots(&d);
        assert!(close(c0, -1.0, 1e-14) && close(c1, 1.0, 1e-14));
        assert!(d.normalization_residual().abs() < 1e-14);

        let a = cv(&[0.0, 0.0, 0.0, 1.0]);
        let d = deflate_twice(&a, PI / 4.0, 3.0 * PI / 4.0).unwrap();
        assert!(close(d.a_dprime[0], 0.0, 1e-14) && close(d.a_dprime[1], 4.0, 1e-14));
        let (c0, c1) = c_at_double_roots(&d);
        assert!(close(c0, -1.0, 1e-14) && close(c1, -1.0, 1e-14));
        assert!(close(c0, -d.a_dprime[1] / 4.0, 1e-14));
        for i in 0..60 {
            let t = 0.1 * i as f64;
            assert!(close(d.reconstruct_s(t), a.eval_pair(t).1, 1e-13));
        }
    }

    #[test]
    fn deflate_twice_is_symmetric() {
        let a = cv(&[0.0, 0.0, 1.0]);
        let d01 = deflate_twice(&a, PI / 3.0, 2.0 * PI / 3.0).unwrap();
        let d10 = deflate_twice(&a, 2.0 * PI / 3.0, PI / 3.0).unwrap();
        for (x, y) in d01.a_dprime.iter().zip(&d10.a_dprime) {
            assert!(close(*x, *y, 1e-10));
        }
    }

    #[test]
    fn deflate_twice_errors() {
        let a = cv(&[0.0, 0.0, 1.0]);
        assert!(matches!(
            deflate_twice(&a, PI / 3.0, PI / 3.0 + 1e-9),
            Err(DeflationError::CoincidentRoots { .. })
        ));
        assert!(matches!(
            deflate_twice(&cv(&[0.0, 1.0]), 1.0, 2.0),
            Err(DeflationError::DegreeTooLow { .. })
        ));
        assert!(matches!(
            deflate_twice(&a, PI / 3.0, PI),
            Err(DeflationError::OutOfDomain { .. })
        ));
        assert!(matches!(
            deflate_twice(&a, PI / 3.0, 1.0),
            Err(DeflationError::NotARoot { .. })
        ));
    }
}
