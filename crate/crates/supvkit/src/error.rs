use thiserror::Error;

/// Errors raised by the library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two operands were expected to share an alphabet but do not.
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    /// A shared event label carries different controllability attributes.
    #[error("conflicting controllability for event `{0}`")]
    ConflictingAttributes(String),

    /// A label does not name an event of the alphabet at hand.
    #[error("unknown event label `{0}`")]
    UnknownEvent(String),

    /// A supervisor candidate is not a sub-behavior of the plant.
    #[error("not a sub-behavior of the plant (witness `{0}`)")]
    NotSubbehavior(String),

    /// One of the containments K ⊆ C ⊆ Lm(G) fails.
    #[error("containment {which} violated (witness `{witness}`)")]
    ContainmentViolated { which: String, witness: String },

    /// A cover with overlapping or incomplete cells was passed where a
    /// congruence is required.
    #[error("cover is not a congruence: {0}")]
    NonCongruenceCover(String),

    /// A cover violates the cover conditions themselves.
    #[error("invalid control cover: {0}")]
    InvalidCover(String),

    /// An enumeration or subset search would exceed the configured budget.
    #[error("budget exceeded: needed {needed}, cap {cap}")]
    BudgetExceeded { needed: u128, cap: u128 },
}
