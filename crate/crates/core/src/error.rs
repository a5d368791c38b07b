use std::path::PathBuf;

use thiserror::Error;

use crate::lanczos::BreakdownInfo;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: expected {expected}, found {found}")]
    DimensionMismatch {
        op: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("matrix is singular to working precision (pivot {index}, |pivot| = {magnitude:e})")]
    SingularPivot { index: usize, magnitude: f64 },

    #[error("zero pivot in tridiagonal LU at row {index} (|u| = {magnitude:e})")]
    PivotBreakdown { index: usize, magnitude: f64 },

    #[error("Lanczos breakdown: {0}")]
    Breakdown(BreakdownInfo),

    #[error("invalid sparse structure: {0}")]
    InvalidStructure(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{}:{line}: {msg}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("CSV output error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn dim(op: &'static str, expected: usize, found: usize) -> Self {
        Error::DimensionMismatch {
            op,
            expected,
            found,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
