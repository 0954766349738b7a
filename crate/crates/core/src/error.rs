use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse word {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("{word} is not a pattern (its letters must be exactly 0..=m)")]
    NotAPattern { word: String },

    #[error("invalid occurrence: {0}")]
    InvalidOccurrence(String),

    #[error("operand {0} violates the positive-letter convention (letter 0 or empty word)")]
    NonPositiveOperand(String),

    #[error("power must be at least 1")]
    ZeroPower,

    #[error("word of length {len} is too short for the monotone guarantee with r={r}, s={s} (needs length {needed})")]
    GuaranteeUnavailable { len: usize, r: usize, s: usize, needed: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} size {size} exceeds guard {guard} (raise the guard, e.g. REPEATS_GUARD={size})")]
    SizeGuard { what: &'static str, size: u128, guard: u128 },

    #[error("word has {have} repeats but at least {need} are required")]
    InsufficientRepeats { have: usize, need: u128 },
}
