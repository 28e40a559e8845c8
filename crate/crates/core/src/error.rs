use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A state or observable violates a structural invariant.
    #[error("invalid {what}: {detail}")]
    Validation { what: &'static str, detail: String },

    /// Shapes disagree between two operands.
    #[error("dimension mismatch: expected {expected}, found {found} ({context})")]
    DimensionMismatch {
        expected: usize,
        found: usize,
        context: &'static str,
    },

    /// A numeric value that should be real carries an imaginary part above tolerance.
    #[error("{quantity} has imaginary residue {residue:e} (tolerance {tolerance:e})")]
    ImaginaryResidue {
        quantity: &'static str,
        residue: f64,
        tolerance: f64,
    },

    #[error("invalid parameter `{name}`: {detail}")]
    Parameter { name: &'static str, detail: String },

    #[error("no equilibrium vector found: smallest singular value of the drift is {sigma_min:e}")]
    EquilibriumNotFound { sigma_min: f64 },

    #[error("Morse parameters admit no bound state (nu = {nu})")]
    NoBoundStates { nu: f64 },

    #[error("quadrature did not reach tolerance {tolerance:e}: achieved error estimate {estimate:e}")]
    Quadrature { tolerance: f64, estimate: f64 },

    /// The scalar curvature `Omega^-1 + B^T (D^T Gr^-1 D + M) B` is not positive.
    #[error("control curvature is not positive: {curvature:e}")]
    Curvature { curvature: f64 },

    #[error("performance index did not converge in {iterations} iterations (last residual {last_residual:e})")]
    NonConvergence {
        iterations: usize,
        last_residual: f64,
        residuals: Vec<f64>,
    },

    #[error("closed loop aborted at step {step}: {source}")]
    Step {
        step: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("failed to parse scenario: {0}")]
    Parse(String),

    #[error("invalid scenario value at `{key}`: {detail}")]
    Config { key: String, detail: String },

    #[error("unknown oracle check `{0}`")]
    UnknownOracle(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn config(key: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            detail: detail.into(),
        }
    }
}
