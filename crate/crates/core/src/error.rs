use thiserror::Error;

use crate::model::Position;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid game parameters s={s}, t={t}: both must be in 1..=4294967295")]
    InvalidParams { s: u64, t: u64 },

    #[error("illegal move from {from}: {reason}")]
    IllegalMove {
        from: Position,
        reason: IllegalReason,
    },

    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),

    #[error("resource limit exceeded: {what} = {requested} is above the cap of {cap}")]
    ResourceLimit {
        what: &'static str,
        requested: u64,
        cap: u64,
    },

    #[error("malformed representation: {0}")]
    MalformedRepresentation(String),

    #[error("table too small: it does not reach {needed}")]
    TableTooSmall { needed: u64 },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// Which constraint an attempted move violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IllegalReason {
    ZeroTake,
    ExceedsHeap,
    /// Both-heaps move with k > l.
    KAboveL,
    /// Both-heaps move with l >= s*k + t.
    DifferenceTooLarge,
}

impl std::fmt::Display for IllegalReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let msg = match self {
            IllegalReason::ZeroTake => "a move must take at least one token",
            IllegalReason::ExceedsHeap => "amount exceeds the heap",
            IllegalReason::KAboveL => "the smaller amount k must not exceed l",
            IllegalReason::DifferenceTooLarge => "both-heaps move needs l < s*k + t",
        };
        f.write_str(msg)
    }
}
