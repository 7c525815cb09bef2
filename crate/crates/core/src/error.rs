//! Crate-wide error type. Variant names follow the failure modes of the
//! individual operations (group loading, size/level mismatches, parameter
//! domain violations, ...).

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a group table: {reason}{}", .witness.map(|(a, b, c)| format!(" (witness triple {a}, {b}, {c})")).unwrap_or_default())]
    NonGroupTable {
        reason: String,
        witness: Option<(usize, usize, usize)>,
    },

    #[error("bad character table: {0}")]
    BadCharacterTable(String),

    #[error("declared conjugacy classes disagree with the recomputed ones: {0}")]
    ClassMismatch(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("element too small to project (need at least 2 letters)")]
    SizeTooSmall,

    #[error("embedding target smaller than the element ({target} < {have})")]
    SizeShrink { have: usize, target: usize },

    #[error("pair does not fit inside level {level}: {detail}")]
    LevelMismatch { detail: String, level: usize },

    #[error("internal error: formula produced a non-integer where an integer is forced")]
    NonIntegerResult,

    #[error("enumeration size {size} exceeds the configured cap {cap}")]
    TooLarge { size: u128, cap: u128 },

    #[error("parameter must be strictly positive: {0}")]
    NonPositiveParameter(String),

    #[error("parameter must be nonzero: {0}")]
    ZeroParameter(String),

    #[error("Pochhammer factor vanishes: {0}")]
    PochhammerZero(String),

    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),

    #[error("measure supports are incompatible: {0}")]
    SupportMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),
}
