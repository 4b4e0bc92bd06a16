use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Partial output of an eigensolve that stopped before every requested pair
/// met the residual tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialSolution {
    pub eigenvalues: Vec<f64>,
    pub residuals: Vec<f64>,
    pub tolerance: f64,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid root bracket [{lo}, {hi}]: no sign change")]
    InvalidBracket { lo: f64, hi: f64 },

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("degenerate domain: {unknowns} unknowns, at least 9 required")]
    DegenerateDomain { unknowns: usize },

    #[error("grid mask is not 4-connected")]
    DisconnectedMask,

    #[error("{}:{line}: {message}", path.display())]
    MaskFile {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("matrix is not positive definite (pivot {pivot} at row {row})")]
    NotPositiveDefinite { row: usize, pivot: f64 },

    #[error(
        "eigensolver did not converge: worst relative residual {:.3e} > tolerance {:.1e}",
        worst_residual(&.0.residuals),
        .0.tolerance
    )]
    NoConvergence(Box<PartialSolution>),

    #[error("threshold {tau} lies beyond the trusted range of the spectrum (max {max})")]
    OutOfTrustedRange { tau: f64, max: f64 },

    #[error("spectra describe different domains: {0}")]
    DomainMismatch(String),

    #[error("insufficient data: {points} points in window, at least {required} required")]
    InsufficientData { points: usize, required: usize },

    #[error("heat trace truncation tail {tail:.3e} at t = {t} exceeds 1e-12")]
    TruncationInsufficient { t: f64, tail: f64 },

    #[error("invalid partition: {0}")]
    Partition(String),
}

fn worst_residual(r: &[f64]) -> f64 {
    r.iter().copied().fold(0.0, f64::max)
}
