use thiserror::Error;

/// Coarse error category, used by the CLI to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorCategory {
    Validation,
    Resource,
    Falsified,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("search budget exceeded: {needed} candidates > budget {budget}")]
    Budget { needed: u128, budget: u128 },

    #[error("backend error: {0}")]
    Backend(String),

    #[error("inconsistent morphism: {0}")]
    Inconsistency(String),

    #[error("cleaning infeasible: region supports the nontrivial logical {witness}")]
    CleaningInfeasible { witness: String },
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::Resource(_) | Error::Budget { .. } => ErrorCategory::Resource,
            Error::Inconsistency(_) => ErrorCategory::Falsified,
            _ => ErrorCategory::Validation,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::Dimension { expected, actual })
    }
}
