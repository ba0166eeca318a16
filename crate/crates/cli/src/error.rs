use std::process::ExitCode;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("acceptance bands not met: {0}")]
    Band(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Validation(_) | CliError::Io { .. } => 2,
            CliError::Numerical(_) => 3,
            CliError::Band(_) => 4,
        })
    }
}

impl From<bernfit::Error> for CliError {
    fn from(e: bernfit::Error) -> Self {
        use bernfit::Error::*;
        match e {
            InvalidNode { .. } | EmptyNodes | IndexOutOfRange { .. } | Dimension(_) => {
                CliError::Validation(e.to_string())
            }
            ZeroPivot { .. } | NotTotallyPositive { .. } | Singular { .. } | Conditioning => {
                CliError::Numerical(e.to_string())
            }
        }
    }
}
