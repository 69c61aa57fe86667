use std::fmt;

/// Failures that stop a run. Unmet proposition conditions are not errors; they
/// come back as a `not_applicable` status.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Usage(String),
    Io(String),
    Validation(Vec<String>),
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        1
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Io(m) => write!(f, "io: {m}"),
            CliError::Validation(v) => write!(f, "invalid configuration: {}", v.join("; ")),
            CliError::Numeric(m) => write!(f, "numeric failure: {m}"),
        }
    }
}

impl std::error::Error for CliError {}
