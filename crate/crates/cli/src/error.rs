use serde_json::{json, Value};
use thiserror::Error;

use bitangent_core::bitangent::SolveError;
use bitangent_core::catalog::CatalogError;

pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_MATH: u8 = 2;
pub const EXIT_USAGE: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{message}")]
    Math {
        message: String,
        details: Option<Value>,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => EXIT_USAGE,
            CliError::Math { .. } => EXIT_MATH,
        }
    }

    pub fn math(message: impl Into<String>) -> Self {
        CliError::Math {
            message: message.into(),
            details: None,
        }
    }

    /// JSON error body for stderr.
    pub fn to_json(&self) -> Value {
        let kind = match self {
            CliError::Usage(_) => "usage",
            CliError::Math { .. } => "math",
            CliError::Io { .. } => "io",
        };
        let mut body = json!({ "kind": kind, "message": self.to_string() });
        if let CliError::Math {
            details: Some(d), ..
        } = self
        {
            body["details"] = d.clone();
        }
        json!({ "schemaVersion": crate::schema::SCHEMA_VERSION, "error": body })
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        let details = match &e {
            SolveError::InvalidConfig(m) => return CliError::Usage(m.clone()),
            SolveError::WrongCount { diagnostics, .. }
            | SolveError::SingularCurve { diagnostics } => serde_json::to_value(diagnostics).ok(),
            _ => None,
        };
        CliError::Math {
            message: e.to_string(),
            details,
        }
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        let root = match &e {
            CatalogError::Pipeline { source, .. } | CatalogError::Sample { source, .. } => {
                source.as_ref()
            }
            other => other,
        };
        match root {
            CatalogError::UnknownType(_)
            | CatalogError::ArityMismatch { .. }
            | CatalogError::ExcludedParameter { .. }
            | CatalogError::UnknownParameter(_)
            | CatalogError::DegenerateFamily => CliError::Usage(e.to_string()),
            CatalogError::Solve(s) => {
                let mut c = CliError::from(s.clone());
                if let CliError::Math { message, .. } = &mut c {
                    *message = e.to_string();
                }
                c
            }
            _ => CliError::math(e.to_string()),
        }
    }
}
