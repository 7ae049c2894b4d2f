use thiserror::Error;

/// Errors raised by the path, matroid, flag and diagram routines.
///
/// Variant names are part of the CLI contract: domain errors are reported
/// with the variant name intact.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid bin spec: {0}")]
    InvalidSpec(String),
    #[error("dimension mismatch: expected {expected} axes, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("wrong step multiset: expected per-axis totals {expected:?}, found {found:?}")]
    WrongStepMultiset {
        expected: Vec<usize>,
        found: Vec<usize>,
    },
    #[error("illegal switch of positions {i} and {j}")]
    IllegalSwitch { i: usize, j: usize },
    #[error("prefix is not an initial segment of any configuration path")]
    InfeasiblePrefix,
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error("bounding path is empty")]
    EmptyPath,
    #[error("element {element} outside ground set of size {ground_size}")]
    OutOfRange { element: usize, ground_size: usize },
    #[error("ground set of size {size} exceeds the brute-force limit {limit}")]
    GroundTooLarge { size: usize, limit: usize },
    #[error("ground sets differ: {left} vs {right}")]
    GroundMismatch { left: usize, right: usize },
    #[error("rank {rank} outside [1, {max}]")]
    BadRank { rank: usize, max: usize },
    #[error("family is empty")]
    EmptyFamily,
    #[error("not a matroid: {0}")]
    NotAMatroid(String),
    #[error("illegal move: ball {ball} is not in bin {bin} during turn {turn}")]
    IllegalMove {
        turn: usize,
        bin: usize,
        ball: usize,
    },
    #[error("wrong cardinality in turn {turn} at boundary {boundary}: expected {expected}, found {found}")]
    WrongCardinality {
        turn: usize,
        boundary: usize,
        expected: usize,
        found: usize,
    },
    #[error("malformed schedule: {0}")]
    MalformedSchedule(String),
    #[error("not a flag basis: prefix union {index} is not a basis of its constituent")]
    NotAFlagBasis { index: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    /// Variant name, used by the CLI when reporting domain errors.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidSpec(_) => "InvalidSpec",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::WrongStepMultiset { .. } => "WrongStepMultiset",
            Error::IllegalSwitch { .. } => "IllegalSwitch",
            Error::InfeasiblePrefix => "InfeasiblePrefix",
            Error::NotAPartition(_) => "NotAPartition",
            Error::EmptyPath => "EmptyPath",
            Error::OutOfRange { .. } => "OutOfRange",
            Error::GroundTooLarge { .. } => "GroundTooLarge",
            Error::GroundMismatch { .. } => "GroundMismatch",
            Error::BadRank { .. } => "BadRank",
            Error::EmptyFamily => "EmptyFamily",
            Error::NotAMatroid(_) => "NotAMatroid",
            Error::IllegalMove { .. } => "IllegalMove",
            Error::WrongCardinality { .. } => "WrongCardinality",
            Error::MalformedSchedule(_) => "MalformedSchedule",
            Error::NotAFlagBasis { .. } => "NotAFlagBasis",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
