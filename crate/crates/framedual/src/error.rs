use framedual_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}:{line}:{column}: parse error: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {detail}")]
    Shape { path: String, detail: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    /// 2 for a violated mathematical contract, 3 for malformed input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e {
                CoreError::DimensionMismatch(_)
                | CoreError::NonFinite { .. }
                | CoreError::OffGrid { .. }
                | CoreError::LatticeMismatch(_) => 3,
                _ => 2,
            },
            _ => 3,
        }
    }
}
