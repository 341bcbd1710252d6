//! Brute-force check of the conditional extremum at small degree, and the
//! epsilon family that approaches it from below.
//!
//! The search maximizes `rho1` over normalized vectors with `sum |a_j| <= 2`,
//! parametrized by the free coordinates `a_1, ..., a_{n-1}` (with
//! `a_n = 1 - sum`). A uniform grid over the box `[-1/2, 3/2]^{n-1}` (which
//! contains the region) seeds a derivative-free simplex descent from the ten
//! best grid points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conditional_extremum;
use crate::rootfind::{rho, rho1};
use crate::tolerances;
use crate::trigpoly::{epsilon_family, CoefficientVector, TrigError};

/// Largest degree the brute-force search accepts.
pub const MAX_SEARCH_DEGREE: usize = 5;

/// Bound on `sum |a_j|` for the search region.
pub const SEARCH_RADIUS: f64 = 2.0;

const BOX_LOW: f64 = -0.5;
const BOX_HIGH: f64 = 1.5;
const STARTS: usize = 10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("search degree must be in 1..={MAX_SEARCH_DEGREE}, got {0}")]
    DegreeOutOfRange(usize),
    #[error("grid density must be at least 2, got {0}")]
    GridTooCoarse(usize),
    #[error("epsilon sequence must be positive and strictly decreasing")]
    InvalidEpsilonSequence,
    #[error(transparent)]
    Trig(#[from] TrigError),
    #[error(transparent)]
    Roots(#[from] crate::rootfind::RootError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub n: usize,
    pub best_value: f64,
    pub best_coeffs: CoefficientVector,
    /// `-tan^2(pi / (2 (n + 1)))`.
    pub theorem_value: f64,
    /// `theorem_value - best_value`.
    pub gap: f64,
    pub evaluations: usize,
    /// Points where the zero set could not be resolved; they score `-inf`.
    pub failed_evaluations: usize,
    /// Largest `rho1 - theorem_value` over every evaluated point.
    pub worst_excess: f64,
    pub grid_density: usize,
    pub refinement_rounds: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpsilonStep {
    pub eps: f64,
    pub rho: f64,
}

/// Outcome of one objective evaluation.
#[derive(Debug, Clone, Copy)]
enum Score {
    Outside,
    Failed,
    Value(f64),
}

impl Score {
    fn value(self) -> f64 {
        match self {
            Score::Value(v) => v,
            _ => f64::NEG_INFINITY,
        }
    }
}

fn full_vector(free: &[f64]) -> Vec<f64> {
    let mut a = free.to_vec();
    a.push(1.0 - free.iter().sum::<f64>());
    a
}

fn score(free: &[f64]) -> Score {
    let a = full_vector(free);
    if a.iter().map(|x| x.abs()).sum::<f64>() > SEARCH_RADIUS {
        return Score::Outside;
    }
    let Ok(a) = CoefficientVector::new(a) else {
        return Score::Outside;
    };
    match rho1(&a) {
        Ok(v) => Score::Value(v),
        Err(_) => Score::Failed,
    }
}

/// Running totals over every scored point.
#[derive(Debug, Default)]
struct Tally {
    evaluations: usize,
    failed: usize,
    worst: f64,
}

impl Tally {
    fn record(&mut self, s: Score) {
        self.evaluations += 1;
        match s {
            Score::Failed => self.failed += 1,
            Score::Value(v) => self.worst = self.worst.max(v),
            Score::Outside => {}
        }
    }
}

/// Nelder-Mead maximization of `rho1` from `start` with initial edge `step`.
fn simplex_ascent(
    start: &[f64],
    step: f64,
    rng: &mut ChaCha8Rng,
    tally: &mut Tally,
) -> (Vec<f64>, f64) {
    let dim = start.len();
    let mut eval = |x: &[f64]| {
        let s = score(x);
        tally.record(s);
        -s.value()
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    simplex.push((start.to_vec(), eval(start)));
    for i in 0..dim {
        let mut vertex = start.to_vec();
        // jitter keeps restarts from retracing the same simplex
        let jitter = 1.0 + 0.25 * (rng.random::<f64>() - 0.5);
        vertex[i] += step * jitter;
        let f = eval(&vertex);
        simplex.push((vertex, f));
    }

    for _ in 0..tolerances::SIMPLEX_MAX_ITER {
        simplex.sort_by(|x, y| x.1.total_cmp(&y.1));
        let diameter = simplex[1..]
            .iter()
            .map(|(v, _)| {
                v.iter()
                    .zip(&simplex[0].0)
                    .map(|(p, q)| (p - q).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if diameter <= tolerances::SIMPLEX_SHRINK {
            break;
        }

        let centroid: Vec<f64> = (0..dim)
            .map(|i| simplex[..dim].iter().map(|(v, _)| v[i]).sum::<f64>() / dim as f64)
            .collect();
        let worst = simplex[dim].clone();
        let along = |scale: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| c + scale * (c - w))
                .collect()
        };

        let reflected = along(1.0);
        let f_reflected = eval(&reflected);
        if f_reflected < simplex[0].1 {
            let expanded = along(2.0);
            let f_expanded = eval(&expanded);
            simplex[dim] = if f_expanded < f_reflected {
                (expanded, f_expanded)
            } else {
                (reflected, f_reflected)
            };
            continue;
        }
        if f_reflected < simplex[dim - 1].1 {
            simplex[dim] = (reflected, f_reflected);
            continue;
        }
        let contracted = if f_reflected < worst.1 {
            along(0.5)
        } else {
            along(-0.5)
        };
        let f_contracted = eval(&contracted);
        if f_contracted < worst.1.min(f_reflected) {
            simplex[dim] = (contracted, f_contracted);
            continue;
        }
        let best = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            for (x, b) in vertex.0.iter_mut().zip(&best) {
                *x = b + 0.5 * (*x - b);
            }
            vertex.1 = eval(&vertex.0);
        }
    }
    simplex.sort_by(|x, y| x.1.total_cmp(&y.1));
    let (point, f) = simplex.swap_remove(0);
    (point, -f)
}

fn grid_point(mut index: usize, dim: usize, density: usize) -> Vec<f64> {
    let spacing = (BOX_HIGH - BOX_LOW) / (density - 1) as f64;
    (0..dim)
        .map(|_| {
            let i = index % density;
            index /= density;
            BOX_LOW + i as f64 * spacing
        })
        .collect()
}

/// Maximizes `rho1` over the search region by grid plus simplex refinement.
///
/// Deterministic for a given `seed`, independent of the rayon pool size.
pub fn brute_force_sup(
    n: usize,
    grid_density: usize,
    refinement_rounds: usize,
    seed: u64,
) -> Result<SearchReport, SearchError> {
    if n == 0 || n > MAX_SEARCH_DEGREE {
        return Err(SearchError::DegreeOutOfRange(n));
    }
    let theorem_value = conditional_extremum(n);
    let report = |best_value: f64, best_coeffs: CoefficientVector, tally: Tally| SearchReport {
        n,
        best_value,
        best_coeffs,
        theorem_value,
        gap: theorem_value - best_value,
        evaluations: tally.evaluations,
        failed_evaluations: tally.failed,
        worst_excess: tally.worst - theorem_value,
        grid_density,
        refinement_rounds,
        seed,
    };

    if n == 1 {
        let a = CoefficientVector::new(vec![1.0])?;
        let value = rho1(&a)?;
        let tally = Tally {
            evaluations: 1,
            failed: 0,
            worst: value,
        };
        return Ok(report(value, a, tally));
    }
    if grid_density < 2 {
        return Err(SearchError::GridTooCoarse(grid_density));
    }

    let dim = n - 1;
    let total = grid_density.pow(dim as u32);
    let scores: Vec<Score> = (0..total)
        .into_par_iter()
        .map(|i| score(&grid_point(i, dim, grid_density)))
        .collect();
    let mut tally = Tally {
        worst: f64::NEG_INFINITY,
        ..Tally::default()
    };
    for &s in &scores {
        tally.record(s);
    }

    let mut ranked: Vec<usize> = (0..total)
        .filter(|&i| matches!(scores[i], Score::Value(_)))
        .collect();
    ranked.sort_by(|&i, &j| {
        scores[j]
            .value()
            .total_cmp(&scores[i].value())
            .then(i.cmp(&j))
    });
    ranked.truncate(STARTS);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spacing = (BOX_HIGH - BOX_LOW) / (grid_density - 1) as f64;
    let mut starts: Vec<(Vec<f64>, f64)> = ranked
        .iter()
        .map(|&i| (grid_point(i, dim, grid_density), scores[i].value()))
        .collect();
    for round in 0..refinement_rounds {
        let step = spacing * 0.5f64.powi(round as i32);
        for start in starts.iter_mut() {
            let (point, value) = simplex_ascent(&start.0, step, &mut rng, &mut tally);
            if value >= start.1 {
                *start = (point, value);
            }
        }
    }

    let (best_free, best_value) =
        starts
            .into_iter()
            .fold((Vec::new(), f64::NEG_INFINITY), |acc, s| {
                if s.1 > acc.1 {
                    s
                } else {
                    acc
                }
            });
    let best_coeffs = CoefficientVector::new(full_vector(&best_free))?;
    Ok(report(best_value, best_coeffs, tally))
}

/// `rho` along the epsilon family for a strictly decreasing sequence of
/// positive `eps`.
pub fn epsilon_convergence(
    n: usize,
    eps_sequence: &[f64],
) -> Result<Vec<EpsilonStep>, SearchError> {
    let positive = eps_sequence.iter().all(|&e| e > 0.0 && e.is_finite());
    let decreasing = eps_sequence.windows(2).all(|w| w[1] < w[0]);
    if !positive || !decreasing {
        return Err(SearchError::InvalidEpsilonSequence);
    }
    eps_sequence
        .iter()
        .map(|&eps| {
            let a = epsilon_family(n, eps)?;
            Ok(EpsilonStep { eps, rho: rho(&a)? })
        })
        .collect()
}
