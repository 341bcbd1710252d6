//! Numerical tolerances used across the crate.
//!
//! Every threshold that decides a branch (accept a root, call a zero a sign
//! change, call a polynomial stable) lives here, so that reports can echo the
//! exact ledger they were computed under.

use serde::{Deserialize, Serialize};

/// Allowed `|sum a_j - 1|` for a [`CoefficientVector`](crate::CoefficientVector).
pub const NORMALIZATION: f64 = 1e-9;

/// Accepted roots of the cosine part satisfy `|Q(c)| <= ROOT_RESIDUAL`.
pub const ROOT_RESIDUAL: f64 = 1e-10;

/// Eigenvalues closer than this are treated as one multiple root.
pub const CLUSTER_RADIUS: f64 = 1e-6;

/// Eigenvalues with `|Im| <= CANDIDATE_IMAG` are polished as possible real roots.
pub const CANDIDATE_IMAG: f64 = 1e-4;

/// Roots with `|c| >= 1 - INTERIOR_MARGIN` are not interior.
pub const INTERIOR_MARGIN: f64 = 1e-12;

/// Offset used when probing the sign of `S` on either side of a zero.
pub const SIGN_PROBE: f64 = 1e-5;

/// A deflation point must satisfy `|Q(cos t0)| <= DEFLATION_ROOT`.
pub const DEFLATION_ROOT: f64 = 1e-8;

/// Largest first-equation residual accepted after back-substitution.
pub const DEFLATION_RESIDUAL: f64 = 1e-7;

/// Two deflation points closer than this are rejected as coincident.
pub const DISTINCT_ROOTS: f64 = 1e-8;

/// Half-width of the excluded band around the removable singularity of the
/// Fejer closed form.
pub const FEJER_GUARD: f64 = 1e-6;

/// Zeros with `|C(t)| <= MARGIN_ZERO_C` do not bound the margins (they
/// correspond to `k -> infinity`).
pub const MARGIN_ZERO_C: f64 = 1e-10;

/// Stable means every root modulus is below `1 - UNIT_CIRCLE_STRICTNESS`.
pub const UNIT_CIRCLE_STRICTNESS: f64 = 1e-10;

/// Bracket growth stops here; margins beyond are reported as unbounded.
pub const BISECTION_CAP: f64 = 1e8;

/// Ratio between consecutive probes while bracketing the first instability.
pub const BRACKET_GROWTH: f64 = 1.05;

/// Shrink tolerance of the simplex descent.
pub const SIMPLEX_SHRINK: f64 = 1e-10;

/// Iteration cap of the simplex descent.
pub const SIMPLEX_MAX_ITER: usize = 2000;

/// A simulated state beyond this magnitude counts as divergence.
pub const DIVERGENCE_BOUND: f64 = 1e6;

/// Final distance to the fixed point accepted as converged.
pub const CONVERGENCE: f64 = 1e-9;

/// Number of trailing iterates inspected for a non-increasing error envelope.
pub const CONVERGENCE_WINDOW: usize = 50;

/// Error level at which the convergence envelope is rounding noise and no
/// longer required to decrease. Near the stability boundary the noise floor
/// grows like `eps |mu| / (1 - spectral radius)`. One percent of
/// [`CONVERGENCE`].
pub const ENVELOPE_FLOOR: f64 = 1e-11;

/// Fixed points must satisfy `|f(x*) - x*| <= FIXED_POINT`.
pub const FIXED_POINT: f64 = 1e-10;

/// Central-difference step used for multipliers and Jacobians.
pub const DIFFERENCE_STEP: f64 = 1e-6;

/// Snapshot of every tolerance, for embedding in serialized reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceLedger {
    pub normalization: f64,
    pub root_residual: f64,
    pub cluster_radius: f64,
    pub candidate_imag: f64,
    pub interior_margin: f64,
    pub sign_probe: f64,
    pub deflation_root: f64,
    pub deflation_residual: f64,
    pub distinct_roots: f64,
    pub fejer_guard: f64,
    pub margin_zero_c: f64,
    pub unit_circle_strictness: f64,
    pub bisection_cap: f64,
    pub bracket_growth: f64,
    pub simplex_shrink: f64,
    pub simplex_max_iter: usize,
    pub divergence_bound: f64,
    pub convergence: f64,
    pub convergence_window: usize,
    pub envelope_floor: f64,
    pub fixed_point: f64,
    pub difference_step: f64,
}

impl ToleranceLedger {
    pub const fn current() -> Self {
        Self {
            normalization: NORMALIZATION,
            root_residual: ROOT_RESIDUAL,
            cluster_radius: CLUSTER_RADIUS,
            candidate_imag: CANDIDATE_IMAG,
            interior_margin: INTERIOR_MARGIN,
            sign_probe: SIGN_PROBE,
            deflation_root: DEFLATION_ROOT,
            deflation_residual: DEFLATION_RESIDUAL,
            distinct_roots: DISTINCT_ROOTS,
            fejer_guard: FEJER_GUARD,
            margin_zero_c: MARGIN_ZERO_C,
            unit_circle_strictness: UNIT_CIRCLE_STRICTNESS,
            bisection_cap: BISECTION_CAP,
            bracket_growth: BRACKET_GROWTH,
            simplex_shrink: SIMPLEX_SHRINK,
            simplex_max_iter: SIMPLEX_MAX_ITER,
            divergence_bound: DIVERGENCE_BOUND,
            convergence: CONVERGENCE,
            convergence_window: CONVERGENCE_WINDOW,
            envelope_floor: ENVELOPE_FLOOR,
            fixed_point: FIXED_POINT,
            difference_step: DIFFERENCE_STEP,
        }
    }
}

impl Default for ToleranceLedger {
    fn default() -> Self {
        Self::current()
    }
}
