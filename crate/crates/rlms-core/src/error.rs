use core::fmt;

/// Errors reported by filter, penalty, and step-size operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Error {
    /// A vector length does not match the filter length it is used with.
    DimensionMismatch { expected: usize, actual: usize },
    /// A normalized step size was requested on an all-zero regressor.
    DegenerateRegressor,
    /// A group partition violates the disjoint-cover contract.
    InvalidPartition(&'static str),
    /// A scalar parameter is outside its valid range.
    InvalidParameter(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, actual } => {
                write!(f, "dimension mismatch: expected length {expected}, got {actual}")
            }
            Error::DegenerateRegressor => {
                write!(f, "normalized step size is undefined for an all-zero regressor")
            }
            Error::InvalidPartition(reason) => write!(f, "invalid group partition: {reason}"),
            Error::InvalidParameter(reason) => write!(f, "invalid parameter: {reason}"),
        }
    }
}

impl core::error::Error for Error {}
