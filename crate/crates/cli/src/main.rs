//! `fejer-schur`: optimal coefficients, conditional minima, stability margins,
//! the brute-force check of the extremum, and chaos-control simulations.

mod commands;
mod error;
mod input;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::input::CoeffSource;

#[derive(Debug, Parser)]
#[command(name = "fejer-schur", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    Rho,
    Rho1,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Geometric,
    Bisection,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MapChoice {
    Logistic,
    Cubic,
    Poly,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form optimal coefficients, their gamma image, I(n) and phi_max(n).
    Optimal(OptimalArgs),
    /// Conditional minima rho and rho1 with the annotated zero set of S.
    Rho(RhoArgs),
    /// Robust stability margins (k1, k2).
    Margins(MarginsArgs),
    /// Brute-force search for the supremum of rho1 at small degree.
    Verify(VerifyArgs),
    /// Fixed-point stabilization of a 1-D map by predictive averaging.
    Simulate(SimulateArgs),
    /// Reproduction table for n = 1..20.
    Table(TableArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct OptimalArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args, Serialize)]
pub struct RhoArgs {
    #[command(flatten)]
    pub source: CoeffSource,
    #[arg(long, value_enum, default_value_t = Which::Both)]
    pub which: Which,
    /// Report zero locations in degrees (display only).
    #[arg(long)]
    pub degrees: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args, Serialize)]
pub struct MarginsArgs {
    #[command(flatten)]
    pub source: CoeffSource,
    #[arg(long, value_enum, default_value_t = Method::Geometric)]
    pub method: Method,
    /// Bisection tolerance on k.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long)]
    pub n: usize,
    /// Grid points per free coordinate; defaults to 2000, 200, 50, 20 for n = 2..5.
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long, default_value_t = 3)]
    pub rounds: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest accepted gap between the theorem value and the search.
    #[arg(long, default_value_t = 1e-3)]
    pub slack: f64,
    /// Worker threads for the grid scan; the result does not depend on it.
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args, Serialize)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub map: MapChoice,
    /// Parameter of the logistic or cubic map.
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<f64>,
    /// Ascending polynomial coefficients p_0,p_1,... for `--map poly`.
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,
    /// Starting point for the fixed-point search of `--map poly`.
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    pub guess: f64,
    /// Use the optimal coefficients of this degree.
    #[arg(long, conflicts_with_all = ["coeffs", "coeffs_file"])]
    pub n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    #[arg(long, conflicts_with = "coeffs")]
    pub coeffs_file: Option<PathBuf>,
    /// Initial value, replicated over the whole history.
    #[arg(long, default_value_t = 0.7, allow_hyphen_values = true)]
    pub x0: f64,
    #[arg(long, default_value_t = 500)]
    pub steps: usize,
    /// Also write the per-step trace as CSV to this file.
    #[arg(long)]
    pub emit_trace: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args, Serialize)]
pub struct TableArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Optimal(args) => commands::optimal(&args),
        Command::Rho(args) => commands::rho(&args),
        Command::Margins(args) => commands::margins(&args),
        Command::Verify(args) => commands::verify(&args),
        Command::Simulate(args) => commands::simulate(&args),
        Command::Table(args) => commands::table(&args),
    };
    match outcome {
        Ok(done) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(done.stdout.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::FAILURE;
            }
            match done.status {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("fejer-schur: {e}");
                    e.exit_code()
                }
            }
        }
        Err(e) => {
            eprintln!("fejer-schur: {e}");
            e.exit_code()
        }
    }
}
