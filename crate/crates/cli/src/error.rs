use plate_grid::GridError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for bad input, 1 for everything that went wrong after validation.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) | CliError::Io(_) => 1,
        }
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl From<plate_core::Error> for CliError {
    fn from(e: plate_core::Error) -> Self {
        match e {
            plate_core::Error::Domain(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<GridError> for CliError {
    fn from(e: GridError) -> Self {
        match e {
            GridError::Core(c) => c.into(),
            GridError::Io(io) => CliError::Io(io),
            GridError::InvalidParameter(_)
            | GridError::TooFewNodes(_)
            | GridError::EmptyDomain
            | GridError::MaskFormat(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Failed(e.to_string())
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
