use thiserror::Error;

/// Errors raised by the library. Every variant names the violated
/// precondition so the CLI can surface it verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid component for {group}: {reason}")]
    InvalidComponent { group: String, reason: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("refusing to enumerate {count} partitions of {n} (limit {limit})")]
    EnumerationGuard { n: u64, count: u128, limit: u128 },

    #[error("negative discriminant {0}")]
    NegativeDiscriminant(String),

    #[error("table parse error on line {line}: {reason}")]
    TableParse { line: usize, reason: String },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
