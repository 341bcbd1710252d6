use std::f64::consts::PI;

use fejer_schur::chaos::{
    closed_loop_spectral_radius, multiplier_interval, simulate as run_simulation,
};
use fejer_schur::extremal::{brute_force_sup, MAX_SEARCH_DEGREE};
use fejer_schur::rootfind::zero_set;
use fejer_schur::schur::{k2_max, margins_bisection, margins_geometric, phi_max};
use fejer_schur::trigpoly::{optimal_coeffs, optimal_gamma};
use fejer_schur::{
    conditional_extremum, CoefficientVector, GammaVector, MapSpec, SearchReport, SimulationTrace,
    StabilityMargins, ZeroRecord,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::input::{parse_list, CoeffSource};
use crate::output::{num, Envelope, Table};
use crate::{
    Format, MapChoice, MarginsArgs, Method, OptimalArgs, RhoArgs, SimulateArgs, TableArgs,
    VerifyArgs, Which,
};

/// Largest degree accepted by `table`.
const TABLE_DEGREE: usize = 20;

/// Allowed excess of the brute-force value over the theorem value.
const VERIFY_EXCESS: f64 = 1e-6;

pub struct Done {
    pub stdout: String,
    /// Set when output was produced but the command still fails.
    pub status: Result<(), CliError>,
}

impl Done {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            status: Ok(()),
        }
    }
}

fn render<I: Serialize, R: Serialize>(
    format: Format,
    command: &str,
    inputs: I,
    results: R,
    csv: impl FnOnce(&R) -> Table,
) -> String {
    match format {
        Format::Json => Envelope::new(command, inputs, results).to_json(),
        Format::Csv => csv(&results).render(),
    }
}

fn flag(b: bool) -> String {
    u8::from(b).to_string()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimalResult {
    pub n: usize,
    pub coeffs: CoefficientVector,
    pub gamma: GammaVector,
    pub theorem_value: f64,
    pub k2: f64,
    pub phi_max: f64,
}

pub fn optimal(args: &OptimalArgs) -> Result<Done, CliError> {
    let n = args.n;
    if n == 0 {
        return Err(CliError::Validation("n must be at least 1".into()));
    }
    let result = OptimalResult {
        n,
        coeffs: optimal_coeffs(n)?,
        gamma: optimal_gamma(n)?,
        theorem_value: conditional_extremum(n),
        k2: k2_max(n),
        phi_max: phi_max(n),
    };
    Ok(Done::ok(render(
        args.format,
        "optimal",
        args,
        result,
        |r| {
            let mut t = Table::new(&["n", "j", "a", "gamma", "theorem_value", "k2", "phi_max"]);
            for (j, (a, g)) in r
                .coeffs
                .as_slice()
                .iter()
                .zip(r.gamma.as_slice())
                .enumerate()
            {
                t.push(vec![
                    r.n.to_string(),
                    (j + 1).to_string(),
                    num(*a),
                    num(*g),
                    num(r.theorem_value),
                    num(r.k2),
                    num(r.phi_max),
                ]);
            }
            t
        },
    )))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RhoResult {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rho: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rho1: Option<f64>,
    pub angle_unit: String,
    pub zeros: Vec<ZeroRecord>,
}

pub fn rho(args: &RhoArgs) -> Result<Done, CliError> {
    let a = args.source.load()?;
    let zs = zero_set(&a)?;
    let scale = if args.degrees { 180.0 / PI } else { 1.0 };
    let result = RhoResult {
        rho: matches!(args.which, Which::Rho | Which::Both).then(|| zs.rho()),
        rho1: matches!(args.which, Which::Rho1 | Which::Both).then(|| zs.rho1()),
        angle_unit: if args.degrees { "degrees" } else { "radians" }.into(),
        zeros: zs
            .zeros
            .iter()
            .map(|z| ZeroRecord {
                t: z.t * scale,
                ..*z
            })
            .collect(),
    };
    let inputs = serde_json::json!({ "source": args.source, "coeffs": a, "which": args.which, "degrees": args.degrees });
    Ok(Done::ok(render(args.format, "rho", inputs, result, |r| {
        let mut t = Table::new(&["t", "sign_change", "c_value", "rho", "rho1"]);
        let opt = |v: Option<f64>| v.map(num).unwrap_or_default();
        for z in &r.zeros {
            t.push(vec![
                num(z.t),
                flag(z.sign_change),
                num(z.c_value),
                opt(r.rho),
                opt(r.rho1),
            ]);
        }
        t
    })))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarginsResult {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub geometric: Option<StabilityMargins>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bisection: Option<StabilityMargins>,
    /// `max(|k1 - k1'|, |k2 - k2'|)` when both methods ran.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub discrepancy: Option<f64>,
}

pub fn margins(args: &MarginsArgs) -> Result<Done, CliError> {
    let a = args.source.load()?;
    let geometric = match args.method {
        Method::Geometric | Method::Both => Some(margins_geometric(&a)?),
        Method::Bisection => None,
    };
    let bisection = match args.method {
        Method::Bisection | Method::Both => Some(margins_bisection(&a, args.tol)?),
        Method::Geometric => None,
    };
    let discrepancy = match (&geometric, &bisection) {
        (Some(g), Some(b)) => Some((g.k1 - b.k1).abs().max((g.k2 - b.k2).abs())),
        _ => None,
    };
    let result = MarginsResult {
        geometric,
        bisection,
        discrepancy,
    };
    let inputs = serde_json::json!({ "source": args.source, "coeffs": a, "method": args.method, "tol": args.tol });
    Ok(Done::ok(render(
        args.format,
        "margins",
        inputs,
        result,
        |r| {
            let mut t = Table::new(&["method", "k1", "k2", "phi", "unbounded", "discrepancy"]);
            let d = r.discrepancy.map(num).unwrap_or_default();
            for m in [&r.geometric, &r.bisection].into_iter().flatten() {
                let method = serde_json::to_value(m.method).unwrap();
                t.push(vec![
                    method.as_str().unwrap_or_default().to_string(),
                    num(m.k1),
                    num(m.k2),
                    num(m.phi),
                    flag(m.unbounded),
                    d.clone(),
                ]);
            }
            t
        },
    )))
}

fn default_grid(n: usize) -> usize {
    match n {
        0..=2 => 2000,
        3 => 200,
        4 => 50,
        _ => 20,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyResult {
    pub report: SearchReport,
    pub slack: f64,
    pub accepted: bool,
}

pub fn verify(args: &VerifyArgs) -> Result<Done, CliError> {
    if args.n == 0 || args.n > MAX_SEARCH_DEGREE {
        return Err(CliError::Validation(format!(
            "verify supports 1 <= n <= {MAX_SEARCH_DEGREE}, got {}",
            args.n
        )));
    }
    if !(args.slack.is_finite() && args.slack >= 0.0) {
        return Err(CliError::Validation(format!(
            "slack must be nonnegative, got {}",
            args.slack
        )));
    }
    let grid = args.grid.unwrap_or_else(|| default_grid(args.n));
    let search = || brute_force_sup(args.n, grid, args.rounds, args.seed);
    let report = match args.workers {
        Some(0) => return Err(CliError::Validation("workers must be at least 1".into())),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| CliError::Validation(format!("cannot start {w} workers: {e}")))?
            .install(search)?,
        None => search()?,
    };

    let gap = report.gap;
    let status = if gap < -VERIFY_EXCESS || report.worst_excess > VERIFY_EXCESS {
        Err(CliError::Consistency(format!(
            "search exceeds the theorem value: gap {gap:e}, worst excess {:e}",
            report.worst_excess
        )))
    } else if gap > args.slack {
        Err(CliError::NonConvergence(format!(
            "search stopped {gap:e} below the theorem value (slack {:e})",
            args.slack
        )))
    } else {
        Ok(())
    };
    let result = VerifyResult {
        report,
        slack: args.slack,
        accepted: status.is_ok(),
    };
    let inputs = serde_json::json!({
        "n": args.n, "grid": grid, "rounds": args.rounds, "seed": args.seed,
        "slack": args.slack, "workers": args.workers,
    });
    let stdout = render(args.format, "verify", inputs, result, |r| {
        let mut t = Table::new(&[
            "n",
            "best_value",
            "theorem_value",
            "gap",
            "worst_excess",
            "evaluations",
            "failed_evaluations",
            "grid_density",
            "refinement_rounds",
            "seed",
            "accepted",
        ]);
        let s = &r.report;
        t.push(vec![
            s.n.to_string(),
            num(s.best_value),
            num(s.theorem_value),
            num(s.gap),
            num(s.worst_excess),
            s.evaluations.to_string(),
            s.failed_evaluations.to_string(),
            s.grid_density.to_string(),
            s.refinement_rounds.to_string(),
            s.seed.to_string(),
            flag(r.accepted),
        ]);
        t
    });
    Ok(Done { stdout, status })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateResult {
    pub map: MapSpec,
    /// Open interval of multipliers stabilized by the coefficients.
    pub multiplier_interval: (f64, f64),
    pub closed_loop_spectral_radius: f64,
    pub trace: SimulationTrace,
}

fn build_map(args: &SimulateArgs) -> Result<MapSpec, CliError> {
    let need_r = || {
        args.r
            .ok_or_else(|| CliError::Validation("--r is required for this map".into()))
    };
    Ok(match args.map {
        MapChoice::Logistic => MapSpec::logistic(need_r()?)?,
        MapChoice::Cubic => MapSpec::cubic(need_r()?)?,
        MapChoice::Poly => {
            let poly = args
                .poly
                .as_deref()
                .ok_or_else(|| CliError::Validation("--poly is required for --map poly".into()))?;
            MapSpec::custom_polynomial(parse_list(poly)?, args.guess)?
        }
    })
}

fn simulation_coeffs(args: &SimulateArgs) -> Result<CoefficientVector, CliError> {
    match (args.n, &args.coeffs, &args.coeffs_file) {
        (Some(n), None, None) => {
            if n == 0 {
                return Err(CliError::Validation("n must be at least 1".into()));
            }
            Ok(optimal_coeffs(n)?)
        }
        (None, coeffs, coeffs_file) if coeffs.is_some() || coeffs_file.is_some() => CoeffSource {
            coeffs: coeffs.clone(),
            coeffs_file: coeffs_file.clone(),
        }
        .load(),
        _ => Err(CliError::Validation(
            "give exactly one of --n, --coeffs, --coeffs-file".into(),
        )),
    }
}

fn trace_csv(trace: &SimulationTrace) -> String {
    let mut t = Table::new(&["step", "x", "error"]);
    let history = trace.horizon_n as i64;
    for (i, x) in trace.states.iter().enumerate() {
        // history entries get nonpositive step indices
        let step = i as i64 - history + 1;
        t.push(vec![
            step.to_string(),
            num(*x),
            num((x - trace.fixed_point).abs()),
        ]);
    }
    t.render()
}

pub fn simulate(args: &SimulateArgs) -> Result<Done, CliError> {
    let map = build_map(args)?;
    let a = simulation_coeffs(args)?;
    let n = a.degree();
    let history = vec![args.x0; n];
    let trace = run_simulation(&map, &a, &history, args.steps)?;
    if let Some(path) = &args.emit_trace {
        std::fs::write(path, trace_csv(&trace))
            .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display())))?;
    }
    let result = SimulateResult {
        multiplier_interval: multiplier_interval(n, &a)?,
        closed_loop_spectral_radius: closed_loop_spectral_radius(map.multiplier, &a),
        map,
        trace,
    };
    let inputs = serde_json::json!({
        "map": args.map, "r": args.r, "poly": args.poly, "guess": args.guess,
        "n": args.n, "coeffs": a, "x0": args.x0, "steps": args.steps,
        "emit_trace": args.emit_trace,
    });
    Ok(Done::ok(render(
        args.format,
        "simulate",
        inputs,
        result,
        |r| {
            let mut t = Table::new(&[
                "n",
                "multiplier",
                "fixed_point",
                "mu_lo",
                "mu_hi",
                "closed_loop_spectral_radius",
                "steps",
                "converged",
                "final_error",
            ]);
            t.push(vec![
                r.trace.horizon_n.to_string(),
                num(r.map.multiplier),
                num(r.map.fixed_point),
                num(r.multiplier_interval.0),
                num(r.multiplier_interval.1),
                num(r.closed_loop_spectral_radius),
                (r.trace.states.len() - r.trace.horizon_n).to_string(),
                flag(r.trace.converged),
                num(r.trace.final_error),
            ]);
            t
        },
    )))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub a_first: f64,
    pub a_max: f64,
    pub a_last: f64,
    pub theorem_value: f64,
    pub k2: f64,
    pub phi_max: f64,
}

pub fn table(args: &TableArgs) -> Result<Done, CliError> {
    let rows = (1..=TABLE_DEGREE)
        .map(|n| {
            let a = optimal_coeffs(n)?;
            let s = a.as_slice();
            Ok(TableRow {
                n,
                a_first: s[0],
                a_max: s.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                a_last: s[n - 1],
                theorem_value: conditional_extremum(n),
                k2: k2_max(n),
                phi_max: phi_max(n),
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Done::ok(render(args.format, "table", args, rows, |rows| {
        let mut t = Table::new(&[
            "n",
            "a_first",
            "a_max",
            "a_last",
            "theorem_value",
            "k2",
            "phi_max",
        ]);
        for r in rows {
            t.push(vec![
                r.n.to_string(),
                num(r.a_first),
                num(r.a_max),
                num(r.a_last),
                num(r.theorem_value),
                num(r.k2),
                num(r.phi_max),
            ]);
        }
        t
    })))
}
