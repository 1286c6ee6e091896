//! Solver settings: defaults, then a config file, then flags.
//!
//! The config file is flat TOML with the keys `acceptTol`, `matchTol`,
//! `hyperflexTol`, `realTol`, `maxIter` and `seed`, all optional:
//!
//! ```toml
//! acceptTol = 1e-8
//! matchTol = 1e-6
//! seed = 7
//! ```

use std::path::{Path, PathBuf};

use clap::Args;
use serde::Deserialize;

use bitangent_core::bitangent::SolverConfig;

use crate::error::CliError;

#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct FileConfig {
    accept_tol: Option<f64>,
    match_tol: Option<f64>,
    hyperflex_tol: Option<f64>,
    real_tol: Option<f64>,
    max_iter: Option<usize>,
    seed: Option<u64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Tuning {
    /// Flat TOML file with solver settings.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Relative residual below which a polished line is accepted.
    #[arg(long = "tol-accept", value_name = "TOL")]
    pub accept_tol: Option<f64>,
    /// Canonical distance under which two lines are the same.
    #[arg(long = "tol-match", value_name = "TOL")]
    pub match_tol: Option<f64>,
    #[arg(long = "tol-hyperflex", value_name = "TOL")]
    pub hyperflex_tol: Option<f64>,
    #[arg(long = "max-iter", value_name = "N")]
    pub max_iter: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

fn read_file(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    toml::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

impl Tuning {
    pub fn solver_config(&self) -> Result<SolverConfig, CliError> {
        let mut cfg = SolverConfig::default();
        if let Some(path) = &self.config {
            let f = read_file(path)?;
            cfg.accept_tol = f.accept_tol.unwrap_or(cfg.accept_tol);
            cfg.match_tol = f.match_tol.unwrap_or(cfg.match_tol);
            cfg.hyperflex_tol = f.hyperflex_tol.unwrap_or(cfg.hyperflex_tol);
            cfg.real_tol = f.real_tol.unwrap_or(cfg.real_tol);
            cfg.max_iter = f.max_iter.unwrap_or(cfg.max_iter);
            cfg.seed = f.seed.unwrap_or(cfg.seed);
        }
        cfg.accept_tol = self.accept_tol.unwrap_or(cfg.accept_tol);
        cfg.match_tol = self.match_tol.unwrap_or(cfg.match_tol);
        cfg.hyperflex_tol = self.hyperflex_tol.unwrap_or(cfg.hyperflex_tol);
        cfg.max_iter = self.max_iter.unwrap_or(cfg.max_iter);
        cfg.seed = self.seed.unwrap_or(cfg.seed);
        cfg.validate()?;
        Ok(cfg)
    }
}
