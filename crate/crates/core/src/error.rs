use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum MbfError {
    #[error("index {index} is out of range for n = {n}")]
    IndexOutOfRange { index: u64, n: u32 },

    #[error("n = {n} exceeds the index limit of {max}")]
    DimensionTooLarge { n: u32, max: u32 },

    #[error("n = {n} exceeds the truth-table cap of {cap} (set MBF_TABLE_CAP to raise it)")]
    TableTooLarge { n: u32, cap: u32 },

    #[error("explicit matrix for n = {n} exceeds the limit of {max}")]
    MatrixTooLarge { n: u32, max: u32 },

    #[error("function is not monotone: f({lower}) = 1 but f({upper}) = 0")]
    NotMonotone { lower: u64, upper: u64 },

    #[error("indices {a} and {b} are comparable, expected an antichain")]
    NotAntichain { a: u64, b: u64 },

    #[error("table of dimension {found} given where dimension {expected} was expected")]
    DimensionMismatch { expected: u32, found: u32 },

    #[error("relation is not a partial order compatible with index order: {0}")]
    InvalidRelation(String),

    #[error("unsupported scale: {0}")]
    UnsupportedScale(String),

    #[error("oracle answers are inconsistent with a monotone function: {0}")]
    InconsistentOracle(String),

    #[error("identification of {function} recovered the wrong function")]
    RecoveryMismatch { function: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = MbfError> = std::result::Result<T, E>;
