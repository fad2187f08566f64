use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    /// A core error raised while building the object declared at this position.
    #[error("{line}:{column}: {source}")]
    At {
        line: usize,
        column: usize,
        #[source]
        source: crlab_core::Error,
    },
    #[error(transparent)]
    Core(#[from] crlab_core::Error),
    #[error("usage error: {0}")]
    Usage(String),
}
