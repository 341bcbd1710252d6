use std::fmt;
use std::process::ExitCode;

use fejer_schur::chaos::ChaosError;
use fejer_schur::extremal::SearchError;
use fejer_schur::rootfind::RootError;
use fejer_schur::schur::SchurError;
use fejer_schur::trigpoly::TrigError;

/// Failure classes, one per nonzero exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad input (exit 2).
    Validation(String),
    /// A result contradicts a proven bound (exit 3).
    Consistency(String),
    /// A numerical method did not converge or the iteration diverged (exit 4).
    NonConvergence(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Validation(_) => 2,
            CliError::Consistency(_) => 3,
            CliError::NonConvergence(_) => 4,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "invalid input: {m}"),
            CliError::Consistency(m) => write!(f, "consistency violation: {m}"),
            CliError::NonConvergence(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl From<TrigError> for CliError {
    fn from(e: TrigError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<RootError> for CliError {
    fn from(e: RootError) -> Self {
        CliError::NonConvergence(e.to_string())
    }
}

impl From<SchurError> for CliError {
    fn from(e: SchurError) -> Self {
        match e {
            SchurError::Roots(r) => r.into(),
            SchurError::InvalidTolerance(_) => CliError::Validation(e.to_string()),
            SchurError::UnstableAtZero => CliError::Consistency(e.to_string()),
        }
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::Trig(t) => t.into(),
            SearchError::Roots(r) => r.into(),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<ChaosError> for CliError {
    fn from(e: ChaosError) -> Self {
        match e {
            ChaosError::Diverged { .. } => CliError::NonConvergence(e.to_string()),
            ChaosError::Roots(r) => r.into(),
            _ => CliError::Validation(e.to_string()),
        }
    }
}
