use thiserror::Error;

/// Exact partition counts. Every addition on counts is checked.
pub type Count = u64;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("count overflow while computing {0}")]
    Overflow(&'static str),

    #[error("invalid partition {parts:?}: {reason}")]
    InvalidPartition { parts: Vec<u32>, reason: &'static str },

    #[error("invalid enumeration constraints: {0}")]
    InvalidConstraints(&'static str),

    #[error("family index must be 1 or 2, got {0}")]
    InvalidFamilyIndex(i64),

    #[error("power series orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("{case}: precondition failed for {parts}: {reason}")]
    Precondition {
        case: String,
        parts: String,
        reason: String,
    },

    #[error("memo conflict at {key}: stored {stored}, offered {offered}")]
    MemoConflict {
        key: String,
        stored: Count,
        offered: Count,
    },
}

pub(crate) fn checked_add(a: Count, b: Count, what: &'static str) -> Result<Count> {
    a.checked_add(b).ok_or(Error::Overflow(what))
}
