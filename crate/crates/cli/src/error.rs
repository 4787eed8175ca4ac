use std::fmt;

/// Exit status of the `subexp` binary.
pub mod exit {
    pub const USAGE: u8 = 2;
    pub const MODEL: u8 = 3;
    pub const VERIFY: u8 = 4;
    pub const IO: u8 = 1;
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Model(subexp_core::Error),
    Verify(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Model(_) => exit::MODEL,
            CliError::Verify(_) => exit::VERIFY,
            CliError::Io(_) => exit::IO,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Model(e) => write!(f, "{e}"),
            CliError::Verify(m) => write!(f, "verification failed: {m}"),
            CliError::Io(e) => write!(f, "i/o: {e}"),
        }
    }
}

impl From<subexp_core::Error> for CliError {
    fn from(e: subexp_core::Error) -> Self {
        CliError::Model(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

pub type CliResult<T> = Result<T, CliError>;
