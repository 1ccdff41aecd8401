use thiserror::Error;

/// Errors produced by the library operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("dimension {dim} out of supported range {min}..={max}")]
    DimensionOutOfRange { dim: usize, min: usize, max: usize },

    #[error("pattern must be non-empty")]
    EmptyPattern,

    #[error("pattern dimension {pattern} exceeds target dimension {target}")]
    SourceExceedsTarget { pattern: usize, target: usize },

    #[error("invalid point string {0:?}: expected a non-empty word over {{0,1}}")]
    BadPointString(String),

    #[error("invalid grid point string {0:?} for side {1}")]
    BadGridPointString(String, u8),

    #[error("{0} is not a power of two")]
    NotPowerOfTwo(u64),

    #[error("weight arithmetic overflow (limit 2^63 - 1)")]
    WeightOverflow,

    #[error("weights must be at least 1")]
    ZeroWeight,

    #[error("modulus must be at least 1")]
    ZeroModulus,

    #[error("duplicate target coordinate {0}")]
    DuplicateCoordinate(usize),

    #[error("pattern sets do not match")]
    PatternMismatch,

    #[error("path vertices at positions {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),

    #[error("edge endpoints must be at Hamming distance 2, got {0}")]
    NotDistanceTwo(usize),

    #[error("no distance-2 path joins points of different parity")]
    ParityMismatch,

    #[error("duplicate element id {0:?}")]
    DuplicateElement(String),

    #[error("unknown element id {0:?}")]
    UnknownElement(String),

    #[error("duplicate block id {0:?}")]
    DuplicateBlock(String),

    #[error("unknown block id {0:?}")]
    UnknownBlock(String),

    #[error("blocks must be non-empty")]
    EmptyBlock,

    #[error("induced-copy enumeration exceeded the limit of {max} maps")]
    InducedCopyLimit { got: usize, max: usize },

    #[error("grid side must be odd and between 3 and 9, got {0}")]
    BadGridSide(usize),

    #[error("segment length {segment} does not divide path length {path}")]
    SegmentDoesNotDivide { segment: usize, path: usize },

    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
