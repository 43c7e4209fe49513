use num_bigint::BigUint;
use thiserror::Error;

use crate::grid::Cell;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("invalid block: {0}")]
    InvalidBlock(String),

    #[error("cell {0} is not in the fragment's domain")]
    DomainNotContained(Cell),

    #[error("conflicting symbols at cell {0}")]
    Conflict(Cell),

    #[error("explicit enumeration needs {windows} windows, cap is {cap}")]
    EnumerationTooLarge { windows: BigUint, cap: u64 },

    #[error("cell {0} is not covered by any occurrence of the block")]
    NotCovered(Cell),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("interchangeable pair construction inconsistent: {0}")]
    ConstructionInconsistent(String),

    #[error("both patches of the constructed pair coincide; the block is not primitive")]
    NotPrimitive,

    #[error("periodic witness invalid: {0}")]
    WitnessInvalid(String),

    #[error("resource limit hit after {nodes} search nodes ({what})")]
    ResourceLimit {
        nodes: u64,
        what: &'static str,
        partial: Option<BigUint>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Errors that signal a bug in a construction rather than bad input.
    pub fn is_verification_failure(&self) -> bool {
        matches!(
            self,
            Error::ConstructionInconsistent(_) | Error::NotPrimitive | Error::WitnessInvalid(_)
        )
    }
}
