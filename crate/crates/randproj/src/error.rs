use randproj_core::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        Self::Config(msg.into())
    }

    /// Process exit status: 3 for budget errors, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Budget(_) => 3,
            Self::Config(_) | Self::Io { .. } => 2,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Budget { .. } => Self::Budget(e.to_string()),
            other => Self::Config(other.to_string()),
        }
    }
}
