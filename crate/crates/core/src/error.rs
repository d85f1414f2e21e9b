use thiserror::Error;

/// Failure modes shared by every solver entry point.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input does not describe a valid object (bad index, bad partition, bad file).
    #[error("malformed input: {0}")]
    Malformed(String),

    /// Syntax error in a game file, with the 1-based line number.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Well-formed input outside the operation's mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A documented precondition of the operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The instance exceeds an enumeration or table budget.
    #[error("resource limit: {0}")]
    Resource(String),

    /// A separation oracle broke its contract.
    #[error("oracle contract violated: {0}")]
    Oracle(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Resource(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
