use thiserror::Error as ThisError;

/// Everything that can go wrong between the command line and the engine.
///
/// Exit codes are derived from the variant: input and cache problems map to
/// 2, an incomplete result that was explicitly demanded maps to 3, and
/// internal contradictions (a violated stat chain, an oracle mismatch) map
/// to 4.
#[derive(Debug, ThisError)]
pub enum CliError {
    #[error(transparent)]
    Engine(#[from] geodav::Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("cache file {path} has format version {found}, this build reads version {expected}")]
    CacheVersion { path: String, found: u32, expected: u32 },

    #[error("cache file {path} belongs to fingerprint {found}, expected {expected}")]
    CacheFingerprint { path: String, found: String, expected: String },

    #[error("cache file {path} is truncated or corrupt: {detail}")]
    CacheCorrupt { path: String, detail: String },

    #[error("unknown stat `{0}` (expected d, D, GD, dcdstar, ddiam)")]
    UnknownStat(String),

    #[error("generator index {index} is out of range for a group of order {order}")]
    GeneratorOutOfRange { index: usize, order: usize },

    #[error("engine disagrees with the oracle: {0}")]
    OracleMismatch(String),

    #[error("{0}")]
    Runtime(String),
}

/// Process exit code for a fatal error.
pub fn exit_code(err: &CliError) -> u8 {
    match err {
        CliError::Engine(geodav::Error::InternalInvariant(_)) => 4,
        CliError::Engine(geodav::Error::Incomplete) => 3,
        CliError::OracleMismatch(_) => 4,
        _ => 2,
    }
}
