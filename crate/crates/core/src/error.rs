use thiserror::Error;

use crate::criteria::Violation;
use crate::dyadic::DyadicInterval;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range for level {level}")]
    IndexOutOfRange { level: u32, index: u64 },
    #[error("level {level} exceeds the configured maximum {max}")]
    LevelTooLarge { level: u32, max: u32 },
    #[error("interval {interval} does not live on level {expected}")]
    MixedLevels {
        expected: u32,
        interval: DyadicInterval,
    },
    #[error("duplicate interval {0}")]
    Duplicate(DyadicInterval),
    #[error("interval {0} is not a member of the collection")]
    NotAMember(DyadicInterval),
    #[error("colour {colour} outside 1..={d}")]
    ColourOutOfRange { colour: u32, d: u32 },
    #[error("invalid rational {num}/{den}")]
    InvalidRational { num: u64, den: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("level mismatch: expected {expected}, found {found}")]
    LevelMismatch { expected: u32, found: u32 },
    #[error("colour count mismatch: colouring uses d={colouring}, parameters use d={params}")]
    ColourCountMismatch { colouring: u32, params: u32 },
    #[error("colouring is partial: {uncoloured} interval(s) uncoloured")]
    PartialColouring { uncoloured: usize },
    #[error("collections overlap at {0}")]
    NotDisjoint(DyadicInterval),
    #[error("inconsistent counts: {0}")]
    InconsistentCounts(String),
    #[error("precondition failed: {0}")]
    Precondition(Violation),
    #[error("internal invariant breach: {0}")]
    InternalBreach(String),
    #[error("search budget of {budget} node visits exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("invalid construction: {0}")]
    InvalidConstruction(String),
    #[error("illegal move: {reason}")]
    IllegalMove {
        reason: String,
        violation: Option<Violation>,
    },
    #[error("operation not allowed while {0}")]
    OutOfTurn(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

impl Error {
    /// The violation carried by this error, if any.
    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Error::Precondition(v) => Some(v),
            Error::IllegalMove { violation, .. } => violation.as_ref(),
            _ => None,
        }
    }
}
