use thiserror::Error;

/// Errors raised by the toolkit.
///
/// `Input` covers malformed or out-of-range arguments, `Capability` covers
/// instances beyond the size caps of the exhaustive kernels, and
/// `Precondition` covers calls whose documented precondition does not hold
/// (for example applying a reflection to an inadmissible set).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("capability limit exceeded: {0}")]
    Capability(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// An identity that must hold unconditionally failed; this signals a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn capability<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Capability(msg.into()))
}
