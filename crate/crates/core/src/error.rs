use crate::BigNat;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimensions: {0}")]
    InvalidDimensions(String),

    #[error("input {x} is outside the range 0..{limit}")]
    RankOutOfRange { x: BigNat, limit: BigNat },

    #[error("invalid index pattern: {0}")]
    InvalidPattern(String),

    #[error("pascal table of {rows}x{cols} does not cover n={n}, k={k}")]
    TableMismatch {
        rows: usize,
        cols: usize,
        n: usize,
        k: usize,
    },

    /// A table would exceed its configured budget. `required` is in the
    /// same unit as `cap` (entries for the LUT, bytes for the pascal table).
    #[error("{what} needs {required} {unit}, over the cap of {cap}")]
    Capacity {
        what: &'static str,
        unit: &'static str,
        required: BigNat,
        cap: BigNat,
    },

    #[error("{what}: expected length {expected}, got {actual}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("unsupported constellation order {0} (must be a power of two, at least 2)")]
    UnsupportedOrder(usize),

    #[error("symbol has {found} active subcarriers, expected {expected}")]
    ActiveCount { expected: usize, found: usize },

    #[error("sample {position} ({value}) is not a constellation point")]
    UnknownPoint { position: usize, value: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("scaling fit needs at least {needed} records with distinct n, got {got}")]
    NotEnoughPoints { needed: usize, got: usize },

    #[error("no measurement for n={n} ({backend})")]
    MissingMeasurement { n: usize, backend: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::InvalidDimensions(msg.into())
    }

    /// Errors caused by malformed input rather than by values outside a
    /// valid domain.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Parse(_))
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
