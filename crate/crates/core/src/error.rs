//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by parsing, analysis, construction and estimation routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed rational: {0:?}")]
    MalformedRational(String),
    #[error("malformed mask file: {0}")]
    MalformedFile(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("first type entry must be the zero multi-index")]
    FirstTypeNotZero,
    #[error("duplicate lattice key {0:?}")]
    DuplicateKey(Vec<i64>),
    #[error("mask has empty support")]
    EmptySupport,
    #[error("coset index {0:?} is not in {{0,1}}^d")]
    InvalidCoset(Vec<i64>),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("non-invertible germ")]
    NonInvertibleGerm,
    #[error("insufficient jet order: need {needed}, have {have}")]
    InsufficientOrder { needed: u32, have: u32 },
    #[error("eigenvalue 1 not simple")]
    EigenvalueNotSimple,
    #[error("1 is not an eigenvalue of the symbol at the origin")]
    NoUnitEigenvalue,
    #[error("normalization impossible: first entry of the eigenvector is zero")]
    NormalizationImpossible,
    #[error("resonant eigenvalue 2^-{0}")]
    ResonantEigenvalue(u32),
    #[error("incompatible (type, translation) pair: {0}")]
    IncompatibleType(String),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("ambiguous symmetry matrix for repeated type entries")]
    AmbiguousSymmetry,
    #[error("type set not closed under the symmetry: {0}")]
    NotClosedUnderSymmetry(String),
    #[error("orbit conflict at {point:?}: {first} vs {second}")]
    OrbitConflict { point: Vec<i64>, first: String, second: String },
    #[error("symmetry image of {0:?} is not a lattice point")]
    NonLatticeImage(Vec<i64>),
    #[error("unsupported symmetry form: {0}")]
    UnsupportedSymmetry(String),
    #[error("unknown id {0:?}")]
    UnknownId(String),
    #[error("memory guard exceeded: {0}")]
    MemoryGuard(String),
    #[error("evaluation outside spline domain at {0}")]
    OutsideDomain(String),
    #[error("construction check failed: {0}")]
    Construction(String),
    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
