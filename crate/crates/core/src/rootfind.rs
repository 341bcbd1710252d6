//! Zeros of the sine polynomial on `[0, pi]` and the conditional minima
//! `rho` and `rho1`.
//!
//! `S` always vanishes at `0` and `pi`. Its interior zeros are the zeros of the
//! cosine part `Q(c) = gamma_1 + 2 gamma_2 T_1(c) + ... + 2 gamma_n T_{n-1}(c)`
//! with `c = cos t` in `(-1, 1)`. They are found as eigenvalues of the
//! Chebyshev colleague matrix of `Q`, which does not miss tangential zeros
//! the way a sign scan would, and are then polished by Newton steps.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eigen;
use crate::tolerances;
use crate::trigpoly::{chebyshev_eval, CoefficientVector};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("root refinement near cos t = {c} stalled at |Q| = {residual:e}")]
    NotConverged { c: f64, residual: f64 },
    #[error("eigenvalue iteration on the colleague matrix did not converge")]
    EigenSolve,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    pub t: f64,
    pub sign_change: bool,
    pub c_value: f64,
}

/// All zeros of `S` on `[0, pi]`, in increasing order. The first entry is
/// `t = 0` and the last is `t = pi`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroSet {
    pub zeros: Vec<ZeroRecord>,
}

impl ZeroSet {
    /// Zeros strictly inside `(0, pi)`.
    pub fn interior(&self) -> &[ZeroRecord] {
        &self.zeros[1..self.zeros.len() - 1]
    }

    pub fn at_pi(&self) -> &ZeroRecord {
        self.zeros.last().expect("zero set always holds t = pi")
    }

    /// Minimum of `C` over every zero.
    pub fn rho(&self) -> f64 {
        self.zeros
            .iter()
            .map(|z| z.c_value)
            .fold(f64::INFINITY, f64::min)
    }

    /// Minimum of `C` over interior sign-change zeros and `t = pi`.
    pub fn rho1(&self) -> f64 {
        self.interior()
            .iter()
            .filter(|z| z.sign_change)
            .map(|z| z.c_value)
            .fold(self.at_pi().c_value, f64::min)
    }
}

/// A real root of the cosine part in `(-1, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct CosineRoot {
    pub c: f64,
    pub multiplicity: usize,
}

fn trimmed(q: &[f64]) -> &[f64] {
    let scale = q.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut len = q.len();
    while len > 1 && q[len - 1].abs() <= 1e-14 * scale {
        len -= 1;
    }
    &q[..len]
}

/// A polished cluster of eigenvalues `(re, im)`.
struct Polished {
    c: f64,
    residual: f64,
    members: Vec<(f64, f64)>,
}

/// Colleague matrix of `sum_{k<=d} q_k T_k`; its eigenvalues are the roots.
fn colleague_matrix(q: &[f64]) -> DMatrix<f64> {
    let d = q.len() - 1;
    let mut m = DMatrix::zeros(d, d);
    m[(0, 1)] = 1.0;
    for k in 1..d - 1 {
        m[(k, k - 1)] = 0.5;
        m[(k, k + 1)] = 0.5;
    }
    let lead = q[d];
    for k in 0..d {
        m[(d - 1, k)] = -q[k] / (2.0 * lead);
    }
    m[(d - 1, d - 2)] += 0.5;
    m
}

/// Refines a cluster centre by multiplicity-aware Newton steps, returning the
/// best point seen and its residual.
fn polish(q: &[f64], start: f64, multiplicity: usize) -> (f64, f64) {
    let mut c = start;
    let (mut value, mut slope) = chebyshev_eval(q, c);
    let mut best = (c, value.abs());
    for _ in 0..60 {
        if value == 0.0 || slope == 0.0 {
            break;
        }
        let next = c - multiplicity as f64 * value / slope;
        if !next.is_finite() || (next - c).abs() > tolerances::CLUSTER_RADIUS.max(1e-3) {
            break;
        }
        c = next;
        (value, slope) = chebyshev_eval(q, c);
        if value.abs() < best.1 {
            best = (c, value.abs());
        } else if value.abs() > 4.0 * best.1 {
            break;
        }
    }
    best
}

/// Real roots of the Chebyshev series `q` strictly inside `(-1, 1)`, merged by
/// multiplicity.
pub(crate) fn cosine_roots(q: &[f64]) -> Result<Vec<CosineRoot>, RootError> {
    let q = trimmed(q);
    let d = q.len() - 1;
    let interior = |c: f64| c.abs() < 1.0 - tolerances::INTERIOR_MARGIN;
    if d == 0 {
        return Ok(Vec::new());
    }
    if d == 1 {
        let c = -q[0] / q[1];
        return Ok(if interior(c) {
            vec![CosineRoot { c, multiplicity: 1 }]
        } else {
            Vec::new()
        });
    }

    let radius = tolerances::CLUSTER_RADIUS;
    let eigenvalues = eigen::eigenvalues(&colleague_matrix(q)).ok_or(RootError::EigenSolve)?;
    let mut candidates: Vec<(f64, f64)> = eigenvalues
        .iter()
        // multiple roots perturb to O(sqrt(eps)) complex pairs, so the window
        // is wide; polishing residuals reject genuinely complex roots
        .filter(|z| z.im.abs() <= tolerances::CANDIDATE_IMAG && z.re.abs() <= 1.0 + radius)
        .map(|z| (z.re, z.im))
        .collect();
    candidates.sort_by(|x, y| x.0.total_cmp(&y.0));

    let mut clusters: Vec<Vec<(f64, f64)>> = Vec::new();
    for cand in candidates {
        match clusters.last_mut() {
            Some(group) if cand.0 - group.last().unwrap().0 <= radius => group.push(cand),
            _ => clusters.push(vec![cand]),
        }
    }

    // Eigenvalues of a multiple root may scatter slightly beyond the cluster
    // radius; polishing pulls them together, so clusters whose polished
    // centres fall within the radius are merged and polished again.
    let mut polished: Vec<Polished> = Vec::new();
    for group in clusters {
        let centre = group.iter().map(|z| z.0).sum::<f64>() / group.len() as f64;
        let (c, residual) = polish(q, centre, group.len());
        match polished.last_mut() {
            Some(prev) if (c - prev.c).abs() <= radius => {
                prev.members.extend(group);
                (prev.c, prev.residual) = polish(q, 0.5 * (prev.c + c), prev.members.len());
            }
            _ => polished.push(Polished {
                c,
                residual,
                members: group,
            }),
        }
    }

    let mut roots = Vec::new();
    for Polished {
        c,
        residual,
        members,
    } in polished
    {
        let multiplicity = members.len();

        let endpoint = if c > 0.0 { 1.0 } else { -1.0 };
        let near_endpoint = (c - endpoint).abs() <= radius || c.abs() >= 1.0;
        if near_endpoint && chebyshev_eval(q, endpoint).0.abs() <= tolerances::ROOT_RESIDUAL {
            // a root of Q at +-1 is a zero of S at 0 or pi, listed separately
            continue;
        }
        if residual > tolerances::ROOT_RESIDUAL {
            if members.iter().all(|z| z.1 != 0.0) {
                // a genuinely complex pair close to the real axis
                continue;
            }
            return Err(RootError::NotConverged { c, residual });
        }
        if interior(c) {
            roots.push(CosineRoot { c, multiplicity });
        }
    }
    Ok(roots)
}

fn changes_sign_across(coeffs: &CoefficientVector, t: f64) -> bool {
    let (_, before) = coeffs.eval_pair(t - tolerances::SIGN_PROBE);
    let (_, after) = coeffs.eval_pair(t + tolerances::SIGN_PROBE);
    before * after < 0.0
}

/// Every zero of `S` on `[0, pi]` with its sign-change flag and `C` value.
///
/// Interior zeros change sign iff their multiplicity as roots of `Q` is odd;
/// roots of multiplicity three or more, and the endpoints, are classified by
/// probing `S` on both sides instead.
pub fn zero_set(coeffs: &CoefficientVector) -> Result<ZeroSet, RootError> {
    let roots = cosine_roots(&coeffs.cosine_part())?;
    let mut zeros = Vec::with_capacity(roots.len() + 2);
    zeros.push(ZeroRecord {
        t: 0.0,
        sign_change: changes_sign_across(coeffs, 0.0),
        c_value: coeffs.eval_pair(0.0).0,
    });
    // c decreasing <=> t increasing
    for root in roots.iter().rev() {
        let t = root.c.acos();
        let sign_change = if root.multiplicity >= 3 {
            changes_sign_across(coeffs, t)
        } else {
            root.multiplicity % 2 == 1
        };
        if zeros.last().is_some_and(|z: &ZeroRecord| z.t >= t) {
            continue;
        }
        zeros.push(ZeroRecord {
            t,
            sign_change,
            c_value: coeffs.eval_pair(t).0,
        });
    }
    zeros.push(ZeroRecord {
        t: PI,
        sign_change: changes_sign_across(coeffs, PI),
        c_value: coeffs.eval_pair(PI).0,
    });
    Ok(ZeroSet { zeros })
}

/// `min { C(t) : S(t) = 0, t in [0, pi] }`.
pub fn rho(coeffs: &CoefficientVector) -> Result<f64, RootError> {
    Ok(zero_set(coeffs)?.rho())
}

/// `min { C(t) : t in T or t = pi }`, `T` the interior sign-change zeros.
pub fn rho1(coeffs: &CoefficientVector) -> Result<f64, RootError> {
    Ok(zero_set(coeffs)?.rho1())
}
