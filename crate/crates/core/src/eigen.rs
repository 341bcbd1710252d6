//! Eigenvalues with a bounded iteration count.
//!
//! The unbounded Schur iteration can cycle on highly structured inputs
//! (nilpotent companions, colleague matrices of odd polynomials), so each
//! attempt is capped. Failed attempts are retried on the transpose and then
//! on orthogonally similar copies, which share the spectrum but not the
//! structure.

use nalgebra::{Complex, DMatrix, Schur};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SWEEPS_PER_DIM: usize = 200;
const SIMILARITY_SEEDS: u64 = 4;

fn attempt(m: DMatrix<f64>) -> Option<Vec<Complex<f64>>> {
    let max_niter = SWEEPS_PER_DIM * m.nrows().max(1);
    Schur::try_new(m, f64::EPSILON, max_niter)
        .map(|s| s.complex_eigenvalues().iter().copied().collect())
}

fn random_orthogonal(dim: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    DMatrix::from_fn(dim, dim, |_, _| rng.random_range(-1.0..1.0))
        .qr()
        .q()
}

pub(crate) fn eigenvalues(m: &DMatrix<f64>) -> Option<Vec<Complex<f64>>> {
    if m.iter().all(|&x| x == 0.0) {
        return Some(vec![Complex::new(0.0, 0.0); m.nrows()]);
    }
    if let Some(e) = attempt(m.clone()).or_else(|| attempt(m.transpose())) {
        return Some(e);
    }
    (0..SIMILARITY_SEEDS).find_map(|seed| {
        let q = random_orthogonal(m.nrows(), seed);
        attempt(q.transpose() * m * &q)
    })
}
