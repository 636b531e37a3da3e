use thiserror::Error;

/// Exit code when a conditional expectation or asymptotic window fails.
pub const EXIT_FINDINGS: u8 = 2;
pub const EXIT_ERROR: u8 = 3;
/// Exit code when two computations of the same finite quantity disagree.
pub const EXIT_IDENTITY: u8 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] prime_bias_core::Error),

    #[error("{0}")]
    Usage(String),

    #[error("no sieve cache covering {needed} in {dir} and building is disabled (drop --no-build or run sieve-build)")]
    MissingCache { needed: u64, dir: String },

    #[error("exact identity failed: {0}")]
    Identity(String),

    #[error("writing output: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialising JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Identity(_) => EXIT_IDENTITY,
            _ => EXIT_ERROR,
        }
    }
}
