//! Coefficient input: inline comma-separated lists or files with one value
//! per line and `#` comments.

use std::path::{Path, PathBuf};

use clap::Args;
use fejer_schur::CoefficientVector;
use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Clone, Args, Serialize)]
#[group(required = true, multiple = false)]
pub struct CoeffSource {
    /// Comma-separated coefficients a_1,...,a_n.
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    /// File with one coefficient per line; lines starting with `#` are ignored.
    #[arg(long)]
    pub coeffs_file: Option<PathBuf>,
}

impl CoeffSource {
    pub fn load(&self) -> Result<CoefficientVector, CliError> {
        let values = match (&self.coeffs, &self.coeffs_file) {
            (Some(inline), _) => parse_list(inline)?,
            (None, Some(path)) => read_file(path)?,
            (None, None) => return Err(CliError::Validation("no coefficients given".into())),
        };
        Ok(CoefficientVector::new(values)?)
    }
}

fn parse_value(token: &str) -> Result<f64, CliError> {
    token
        .trim()
        .parse::<f64>()
        .map_err(|_| CliError::Validation(format!("not a number: {token:?}")))
}

pub fn parse_list(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',').map(parse_value).collect()
}

pub fn parse_file_contents(text: &str) -> Result<Vec<f64>, CliError> {
    text.lines()
        .map(str::trim)
        .filter(|line| !line.is_empty() && !line.starts_with('#'))
        .map(parse_value)
        .collect()
}

fn read_file(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
    parse_file_contents(&text)
}
