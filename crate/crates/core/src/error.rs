use thiserror::Error;

/// Errors produced anywhere in the scoring pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The caller supplied data that violates an input contract.
    #[error("input error: {0}")]
    Input(String),

    /// A line of an edge file could not be parsed.
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("I/O error: {0}")]
    Io(String),

    /// The shifted iteration did not reach the residual target.
    #[error("no convergence after {iterations} iterations (last residual {residual:e})")]
    Convergence { iterations: usize, residual: f64 },

    /// No recurrent class with internal weight exists, so no score vector
    /// with a positive component can be produced.
    #[error("no rankable structure: {0}")]
    NoRankableStructure(String),

    /// A post-solve consistency check failed. This signals a solver bug
    /// rather than bad input.
    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),
}

impl Error {
    /// Stable machine-readable code used in reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Input(_) => "input-error",
            Error::Parse { .. } => "parse-error",
            Error::Io(_) => "io-error",
            Error::Convergence { .. } => "convergence-error",
            Error::NoRankableStructure(_) => "no-rankable-structure",
            Error::InternalConsistency(_) => "internal-consistency",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
