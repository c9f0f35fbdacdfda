//! Settings merged from defaults, `QB_DEFAULT_TOL`, an optional key=value
//! file and command-line flags, each overriding the one before.

use std::path::Path;

use qbessel::quadrature::QuadratureOptions;

use crate::error::{CliError, CliResult};
use crate::suite::DEFAULT_SEED;

pub const TOL_ENV: &str = "QB_DEFAULT_TOL";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub seed: u64,
    pub timestamp: bool,
}

impl Default for Settings {
    fn default() -> Self {
        let q = QuadratureOptions::default();
        Self {
            rel_tol: q.rel_tol,
            abs_tol: q.abs_tol,
            seed: DEFAULT_SEED,
            timestamp: true,
        }
    }
}

fn positive(key: &str, v: &str) -> CliResult<f64> {
    match v.trim().parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(CliError::Config(format!(
            "{key} must be a positive number, got '{v}'"
        ))),
    }
}

impl Settings {
    /// Defaults with `QB_DEFAULT_TOL` applied when set.
    pub fn from_env(tol: Option<&str>) -> CliResult<Self> {
        let mut s = Self::default();
        if let Some(v) = tol {
            s.rel_tol = positive(TOL_ENV, v)?;
        }
        Ok(s)
    }

    /// Apply `key = value` lines; `#` starts a comment.
    pub fn merge_config(&mut self, text: &str) -> CliResult<()> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key=value", n + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "rel_tol" => self.rel_tol = positive(key, value)?,
                "abs_tol" => self.abs_tol = positive(key, value)?,
                "seed" => {
                    self.seed = value.parse().map_err(|_| {
                        CliError::Config(format!("line {}: bad seed '{value}'", n + 1))
                    })?
                }
                "timestamp" => {
                    self.timestamp = value.parse().map_err(|_| {
                        CliError::Config(format!("line {}: timestamp is true or false", n + 1))
                    })?
                }
                _ => {
                    return Err(CliError::Config(format!(
                        "line {}: unknown key '{key}'",
                        n + 1
                    )))
                }
            }
        }
        Ok(())
    }

    pub fn merge_file(&mut self, path: &Path) -> CliResult<()> {
        let text = std::fs::read_to_string(path)?;
        self.merge_config(&text)
    }

    pub fn quadrature(&self) -> QuadratureOptions {
        QuadratureOptions {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            ..Default::default()
        }
    }
}
