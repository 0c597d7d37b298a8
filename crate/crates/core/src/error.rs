use thiserror::Error;

use crate::explorer::StateSpace;
use crate::kernel::TransitionId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// The caller asked for something the model or space cannot provide.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("transition {transition} out of range (model has {count} transitions)")]
    TransitionOutOfRange { transition: TransitionId, count: usize },

    /// A model wrote a value that does not fit in its variable width.
    #[error(
        "value overflow: transition {transition} wrote {value} to variable {variable} \
         ({width}-bit variables)"
    )]
    ValueOverflow {
        transition: TransitionId,
        variable: usize,
        value: u32,
        width: u32,
    },

    #[error("transition {transition} changed the state length from {expected} to {found}")]
    LengthChanged {
        transition: TransitionId,
        expected: usize,
        found: usize,
    },

    #[error("stubborn rule of transition {from} names transition {to} (model has {count})")]
    RuleOutOfRange {
        from: TransitionId,
        to: TransitionId,
        count: usize,
    },

    /// Exploration stopped at the configured state limit. The partial space is kept.
    #[error("state limit of {limit} states exceeded")]
    StateLimit { limit: usize, partial: Box<StateSpace> },

    #[error("internal invariant breached: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
}
