use std::fmt;

use ydkit::{ClassifyError, HopfError, NicholsError, ScalarError};

/// Failures, grouped by exit code; failed verifications are reports with exit code 3.
#[derive(Debug)]
pub enum CliError {
    /// Bad input: exit 2.
    Input(String),
    /// Integrity or internal error: exit 4.
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "invalid input: {m}"),
            CliError::Internal(m) => write!(f, "{m}"),
        }
    }
}

impl From<ScalarError> for CliError {
    fn from(e: ScalarError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<HopfError> for CliError {
    fn from(e: HopfError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<NicholsError> for CliError {
    fn from(e: NicholsError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::Integrity { .. } | ClassifyError::Corpus { .. } => CliError::Internal(e.to_string()),
            ClassifyError::Hopf(h) => h.into(),
            ClassifyError::Nichols(n) => n.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}
