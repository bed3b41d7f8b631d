use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// b² + c fell below the degeneracy floor; only happens near {m = k0, n = 0}.
    #[error("pressure law degenerate at (m = {m:e}, n = {n:e}): b^2 + c = {disc:e}")]
    Degenerate { m: f64, n: f64, disc: f64 },

    #[error("quadrature did not converge: error estimate {estimate:e} after {subdivisions} subdivisions")]
    Quadrature { estimate: f64, subdivisions: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("positivity lost in {field} at index {index}: value {value:e} (t = {t})")]
    PositivityLoss {
        field: &'static str,
        index: usize,
        value: f64,
        t: f64,
    },

    #[error("non-finite value in {what} (t = {t})")]
    NonFinite { what: String, t: f64 },

    /// A numerical failure during a run, annotated with the step it happened at.
    #[error("step {step} (t = {t}): {source}")]
    AtStep {
        step: usize,
        t: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("at resolution {resolution}: {source}")]
    AtResolution {
        resolution: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("configuration errors:\n  {}", .0.join("\n  "))]
    Config(Vec<String>),

    #[error("format error in {}: {msg}", path.display())]
    Format { path: PathBuf, msg: String },

    #[error("output directory {} is locked by another run", .0.display())]
    Locked(PathBuf),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures of the numerics (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::PositivityLoss { .. }
            | Error::NonFinite { .. }
            | Error::Degenerate { .. }
            | Error::Quadrature { .. } => true,
            Error::AtStep { source, .. } | Error::AtResolution { source, .. } => {
                source.is_numerical()
            }
            _ => false,
        }
    }
}
