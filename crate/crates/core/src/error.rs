use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// The variants map onto the CLI exit-code contract: parse problems are
/// input errors, structural problems are invariant violations of the data
/// itself, and everything else is a failed precondition or check.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JkError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("structural violation: {0}")]
    Structural(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("rational-eigenvalue required: {0}")]
    NonRational(String),
    #[error("guardrail exceeded: {0}")]
    Guardrail(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl JkError {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            JkError::Parse(_) => 2,
            JkError::Structural(_) => 3,
            JkError::Precondition(_) | JkError::NonRational(_) | JkError::Guardrail(_) | JkError::Internal(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, JkError>;
