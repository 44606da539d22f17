use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An index partition is outside the set a function is defined on.
    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("argument order: expected r >= s, got r = {r}, s = {s}")]
    ArgumentOrder { r: u32, s: u32 },

    #[error("invalid degree: {0}")]
    InvalidDegree(String),

    /// The degree condition of a Gromov-Witten query fails. Distinct from an
    /// admissible query whose value happens to be zero.
    #[error("inadmissible query: {0}")]
    InadmissibleQuery(String),

    /// An exact computation produced something that cannot happen
    /// mathematically (inexact division, inconsistent linear system, ...).
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("polynomial is not symmetric: {0}")]
    NotSymmetric(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
