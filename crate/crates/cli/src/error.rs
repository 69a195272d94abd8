use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("at {point}: {source}")]
    Numeric {
        point: String,
        #[source]
        source: fockent::Error,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 2 for usage errors, 3 for numeric guards, 1 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric { .. } => 3,
            CliError::Io(_) | CliError::Csv(_) => 1,
        }
    }

    /// Stable tag for the `error,<kind>,<message>` line.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Numeric { .. } => "numeric",
            CliError::Io(_) | CliError::Csv(_) => "io",
        }
    }
}
