use std::path::PathBuf;

/// Errors produced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A group-spec string failed to parse. `pos` is a byte offset into the input.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// Building a group would exceed the configured order bound.
    #[error("group order {order} exceeds the bound {bound}")]
    OrderBound { order: u64, bound: u64 },

    /// A Cayley table failed group-axiom validation.
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),

    /// I/O failure while reading a Cayley table file.
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// An enumeration would exceed the raw-tuple budget.
    #[error("enumeration needs {needed} raw tuples, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    /// Genus-graded class counts are inconsistent with a free abelian monoid.
    #[error("freeness violation: {0}")]
    FreenessViolation(String),

    /// Integer arithmetic overflowed; results would be silently wrong.
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    /// A parameter is outside the supported range.
    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
