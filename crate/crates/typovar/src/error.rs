use std::path::PathBuf;

/// Failures surfaced by the file-level operations.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Bad or conflicting options; maps to exit code 1.
    #[error("{0}")]
    Usage(String),
    /// Input that cannot be processed; maps to exit code 2.
    #[error("{0}")]
    Data(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn data(msg: impl std::fmt::Display) -> Self {
        Error::Data(msg.to_string())
    }

    pub fn usage(msg: impl std::fmt::Display) -> Self {
        Error::Usage(msg.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 1,
            Error::Data(_) | Error::Io { .. } => 2,
        }
    }
}
