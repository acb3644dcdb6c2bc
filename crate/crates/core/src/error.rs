use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("tensor fails validation: {0}")]
    InvalidTensor(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("tensor is not in canonical solvable form")]
    NotCanonical,
    #[error("index 1 is not a two-sided unit")]
    NoUnit,
    #[error("complement of the unit is not an ideal (some product has a unit component)")]
    NotAugmented,
    #[error("algebra is not nilpotent")]
    NotNilpotent,
    #[error("algebra has no rational character with the requested block")]
    NoCharacter,
    #[error("matrix is not a 2-cocycle for this tensor")]
    NotCocycle,
    #[error("coboundary failed the cocycle condition (internal inconsistency)")]
    CoboundaryNotCocycle,
    #[error("invalid monoid table: {0}")]
    InvalidTable(String),
    #[error("unknown preset algebra {0:?}")]
    UnknownPreset(String),
    #[error("invalid Lie algebra: {0}")]
    InvalidLieAlgebra(String),
    #[error("size {size} exceeds cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("load error: {0}")]
    Load(String),
}
