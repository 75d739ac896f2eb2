use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, keys or caps; exit 2 with nothing written.
    #[error("config error: {0}")]
    Config(String),

    /// A computation that could not finish; exit 1.
    #[error("computation failed: {0}")]
    Compute(#[from] thinex_core::Error),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn config(e: thinex_core::Error) -> Self {
        CliError::Config(e.to_string())
    }
}
