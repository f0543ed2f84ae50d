use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed group spec `{0}`: {1}")]
    MalformedSpec(String, String),

    #[error("malformed sequence `{0}`: {1}")]
    MalformedSequence(String, String),

    #[error("multiplication table is not a Latin square: {0}")]
    NotLatinSquare(String),

    #[error("multiplication table is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),

    #[error("multiplication table has no identity element")]
    NoIdentity,

    #[error("group order {order} exceeds the supported cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },

    #[error("group of order {order} exceeds the automorphism search cap {cap}")]
    AutomorphismCapExceeded { order: usize, cap: usize },

    #[error("operation requires an abelian group")]
    NonAbelian,

    #[error("element {elem} is not generated by the given set")]
    NotGenerated { elem: usize },

    #[error("element set is not closed under multiplication")]
    NotClosed,

    #[error("sequence is not product-one")]
    NotProductOne,

    #[error("level data is incomplete (search was capped before exhaustion)")]
    Incomplete,

    #[error("resumed level data has kind {found} but {expected} was expected")]
    LevelKindMismatch { expected: &'static str, found: &'static str },

    #[error("malformed level data: {0}")]
    MalformedLevels(String),

    #[error("brute-force guard rail: {0}")]
    GuardRail(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

pub(crate) fn internal(msg: impl Into<String>) -> Error {
    Error::InternalInvariant(msg.into())
}
