use thiserror::Error;

use crate::multisegment::Multisegment;
use crate::segment::Segment;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An elementary operation was requested on a pair that is not linked.
    #[error("segments {0} and {1} are not linked")]
    NotLinked(Segment, Segment),

    #[error("index {index} out of range for a multisegment with {len} segments")]
    IndexOutOfRange { index: usize, len: usize },

    /// The input lies outside the domain of the operation.
    #[error("{0}")]
    Domain(String),

    #[error("{what} not below {root}")]
    NotInPoset { what: Multisegment, root: Multisegment },

    /// A computation would exceed a configured size cap.
    #[error("{what} exceeds the size cap of {cap}")]
    ResourceLimit { what: String, cap: usize },

    /// A computed object failed one of its defining invariants. This always
    /// indicates a bug.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}
