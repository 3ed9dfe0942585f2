use thiserror::Error;

/// Failures that end a run, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Both variants are input-side problems.
    pub fn exit_code(&self) -> u8 {
        1
    }
}

/// Anything displayable from the core crate is an input problem at this level.
pub fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}
