use thiserror::Error;

/// Errors raised by group, ring, design and parsing operations.
///
/// A failed verification is never an error: it is reported as a rejecting
/// [`Certificate`](crate::designs::Certificate).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group must have at least one cyclic factor")]
    EmptyGroup,

    #[error("cyclic order must be at least 1, got {0}")]
    InvalidOrder(u64),

    #[error("group order overflows the platform integer range")]
    GroupTooLarge,

    #[error("dimension mismatch: expected {expected} coordinates, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operands belong to different groups ({left} vs {right})")]
    GroupMismatch { left: String, right: String },

    #[error("coordinate {value} out of range for cyclic factor of order {order}")]
    CoordinateOutOfRange { value: u64, order: usize },

    #[error("rank {rank} out of range for group of order {order}")]
    RankOutOfRange { rank: usize, order: usize },

    #[error("duplicate element {0}")]
    DuplicateElement(String),

    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),

    #[error("the set M must be nonempty")]
    EmptyMSet,

    #[error("generalized difference sets require k > 1, got k = {0}")]
    GeneralizedSmallK(u64),

    #[error("bent characterization needs an even number of variables, got t = {0}")]
    OddVariables(usize),

    #[error("truth table length {found} does not match 2^{vars} = {expected}")]
    TruthTableLength {
        vars: usize,
        expected: usize,
        found: usize,
    },

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
