use std::fmt;

/// Errors from scenario handling and experiment execution.
#[derive(Debug)]
pub enum SimError {
    /// Propagated filter/penalty error.
    Core(rlms_core::Error),
    /// Bad scenario configuration.
    Config(String),
    /// File-system failure while emitting artifacts.
    Io(std::io::Error),
}

impl fmt::Display for SimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimError::Core(e) => write!(f, "{e}"),
            SimError::Config(msg) => write!(f, "{msg}"),
            SimError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SimError {}

impl From<rlms_core::Error> for SimError {
    fn from(e: rlms_core::Error) -> Self {
        SimError::Core(e)
    }
}

impl From<std::io::Error> for SimError {
    fn from(e: std::io::Error) -> Self {
        SimError::Io(e)
    }
}
