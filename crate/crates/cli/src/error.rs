use thiserror::Error;

/// Failures surfaced by the command-line front end.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, names or ranges; exit code 2.
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] stirpoly::Error),
    #[error(transparent)]
    Poly(#[from] stirpoly::PolyError),
    #[error(transparent)]
    Series(#[from] stirpoly::SeriesError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid JSON in {path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
}
