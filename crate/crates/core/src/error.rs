//! Error type shared by every module of the core crate.

use alloc::string::String;
use core::fmt;

/// Convenience alias.
pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Failures raised by workload validation, argument checks and trace
/// integrity checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A process violates one of its field invariants.
    InvalidProcess {
        /// Label of the offending process.
        id: String,
        /// What is wrong with it.
        reason: &'static str,
    },
    /// Two processes share an id.
    DuplicateId(String),
    /// A workload must contain at least one process.
    EmptyWorkload,
    /// A function argument is out of its domain.
    InvalidArgument(&'static str),
    /// A trace does not belong to the workload it was checked against.
    Integrity(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidProcess { id, reason } => write!(f, "process {id}: {reason}"),
            Error::DuplicateId(id) => write!(f, "duplicate process id {id}"),
            Error::EmptyWorkload => f.write_str("workload has no processes"),
            Error::InvalidArgument(what) => write!(f, "invalid argument: {what}"),
            Error::Integrity(what) => write!(f, "trace integrity violation: {what}"),
        }
    }
}

impl core::error::Error for Error {}
