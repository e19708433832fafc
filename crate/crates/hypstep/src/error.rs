use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] hypstep_core::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
    #[error("cannot encode report: {0}")]
    Encode(String),
}

impl CliError {
    /// `2` for anything the user can fix by changing the invocation, `1`
    /// when a computation failed mid-run.
    pub fn exit_code(&self) -> i32 {
        use hypstep_core::Error as E;
        match self {
            CliError::Config(_) | CliError::Io(_) | CliError::Encode(_) => 2,
            CliError::Core(E::Range { .. } | E::Configuration(_) | E::Input(_)) => 2,
            CliError::Core(_) => 1,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Encode(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Encode(e.to_string())
    }
}
