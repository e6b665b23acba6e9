use thiserror::Error;

/// Errors raised by the engine. Every variant names a violated precondition
/// or a failed internal consistency check; nothing is silently repaired.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial has an odd coefficient and cannot be halved: {0}")]
    NotDivisible(String),

    #[error("bad generator label {label} at rank {rank}")]
    BadLabel { label: String, rank: usize },

    #[error("generator {label} does not belong to the {ambient} ambient")]
    BadGenerator { label: String, ambient: String },

    #[error("enumeration of {what} exceeds the budget of {budget}")]
    TooLarge { what: String, budget: usize },

    #[error("permutation is not a distinguished double coset representative")]
    NotDistinguished,

    #[error("invalid value: {0}")]
    Invalid(String),

    #[error("operands live in different ambients: {0}")]
    AmbientMismatch(String),

    #[error("left factor is not of fundamental form")]
    NotFundamental,

    #[error("expansion residual is nonzero: {0}")]
    InconsistentExpansion(String),

    #[error("double coset has {count} elements of minimal length")]
    NotUnique { count: usize },

    #[error("type D products need rank at least 4, got {0}")]
    RankTooSmall(usize),

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
