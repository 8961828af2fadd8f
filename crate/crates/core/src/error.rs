use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank {rank} for type {family}: {valid}")]
    InvalidRank {
        family: char,
        rank: usize,
        valid: &'static str,
    },
    #[error("unknown Lie family '{0}' (expected one of A, B, C, D, E, F, G)")]
    UnknownFamily(String),
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("center element {coeffs:?} is out of range for invariant factors {factors:?}")]
    ElementOutOfRange { coeffs: Vec<i64>, factors: Vec<i64> },
    #[error("vector {0} is not in the coweight lattice")]
    NotACoweight(String),
    #[error("vector {0} is not in the lattice")]
    NotInLattice(String),
    #[error("no dominant representative found within coefficient radius {radius}")]
    NoDominantRepresentative { radius: i64 },
    #[error("level must be a positive integer, got {0}")]
    InvalidLevel(String),
    #[error("quadrature grid must be at least {min}, got {got}")]
    GridTooSmall { min: usize, got: usize },
    #[error("{family} requires {constraint}")]
    InvalidTableParams {
        family: &'static str,
        constraint: String,
    },
    #[error("maps are defined over different root systems")]
    RootSystemMismatch,
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
