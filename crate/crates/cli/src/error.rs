use std::fmt;

/// CLI failures split by exit code: validation problems exit 2, I/O exits 3.
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Io(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        CliError::Validation(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(msg) | CliError::Io(msg) => f.write_str(msg),
        }
    }
}

impl From<aurea::Error> for CliError {
    fn from(err: aurea::Error) -> Self {
        CliError::Validation(err.to_string())
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;
