use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the numerical routines.
///
/// Conditional expectations (sign biases that hold under RH/GRH) are never
/// reported through this type; see [`crate::sums::Finding`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("argument {x} exceeds the table limit {limit}")]
    Range { x: f64, limit: u64 },

    #[error("requested limit {requested} exceeds the memory ceiling {ceiling}")]
    Capacity { requested: u64, ceiling: u64 },

    #[error("pole of {function} at s = {s}")]
    Pole { function: &'static str, s: String },

    #[error("{function} vanishes numerically at s = {s} (|value| = {magnitude:e})")]
    Singularity {
        function: &'static str,
        s: String,
        magnitude: f64,
    },

    #[error("zero ordinate precision too coarse at x = {x}: phase error {phase_error:e} > {limit:e}")]
    Precision { x: f64, phase_error: f64, limit: f64 },

    #[error("zero scan found {found} ordinates up to t = {t_max}, expected about {expected:.2}")]
    Completeness { found: usize, expected: f64, t_max: f64 },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("sieve cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
