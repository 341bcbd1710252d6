//! Conditional extremum of conjugate trigonometric polynomials and the
//! Schur robust-stability margins it controls.
//!
//! For a coefficient vector `a = (a_1, ..., a_n)` with `sum a_j = 1`, the pair
//!
//! ```text
//! C(t) = sum a_j cos(j t),    S(t) = sum a_j sin(j t)
//! ```
//!
//! determines where the polynomial family `lambda^n + k (a_1 lambda^(n-1) + ... + a_n)`
//! leaves the unit disk. The quantity
//!
//! ```text
//! sup_a  min { C(t) : S(t) = 0 }  =  -tan^2(pi / (2 (n + 1)))
//! ```
//!
//! is attained in the limit by the Fejer-kernel coefficients, which also
//! maximize the stability segment length `k1 + k2 = 1 / sin^2(pi / (2 (n + 1)))`.
//!
//! Modules:
//!
//! * [`trigpoly`]: evaluation, the gamma transform, closed-form optimal coefficients.
//! * [`deflation`]: factoring known zeros out of `S` and the closed-form `C` values.
//! * [`rootfind`]: zero sets of `S` on `[0, pi]`, `rho` and `rho1`.
//! * [`schur`]: stability margins, geometric and by bisection.
//! * [`extremal`]: brute-force search for the supremum and the epsilon family.
//! * [`chaos`]: fixed-point stabilization of 1-D maps by predictive averaging.

pub mod chaos;
pub mod deflation;
mod eigen;
pub mod extremal;
pub mod rootfind;
pub mod schur;
pub mod tolerances;
pub mod trigpoly;

pub use chaos::{MapKind, MapSpec, SimulationTrace};
pub use deflation::{DeflatedForm, DoublyDeflatedForm};
pub use extremal::SearchReport;
pub use rootfind::{ZeroRecord, ZeroSet};
pub use schur::{MarginMethod, StabilityMargins};
pub use trigpoly::{CoefficientVector, EvaluationGrid, GammaVector};

/// The value of the conditional extremum at degree `n`: `-tan^2(pi / (2 (n + 1)))`.
pub fn conditional_extremum(n: usize) -> f64 {
    let half_angle = std::f64::consts::PI / (2.0 * (n as f64 + 1.0));
    -half_angle.tan().powi(2)
}
