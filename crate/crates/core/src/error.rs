use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix has non-integer entries")]
    NonIntegerInput,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("entry `{0}` already has integral holonomy")]
    NoIntegralRepNeeded(String),
    #[error("entry `{0}` has no listed integral representation")]
    NoIntegralRepListed(String),
    #[error("point lies within tolerance of a cell boundary")]
    BoundaryAmbiguity,
    #[error("holonomy closure exceeded {0} elements")]
    ClosureBudgetExceeded(usize),
    #[error("matrix is not an element of the holonomy group")]
    NotInHolonomy,
    #[error("candidate does not normalize the holonomy group")]
    CandidateDoesNotNormalize,
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("matrix does not preserve the translation lattice")]
    DoesNotPreserveLattice,
    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(String),
    #[error("`{0}` does not contain the identity and is not a group")]
    NotASubgroup(String),
    #[error("invalid coset table: {0}")]
    InvalidCosetTable(String),
    #[error("coset enumeration exceeded budget {0}")]
    IndexBudgetExceeded(usize),
    #[error("side pairing search incomplete at word length {0}")]
    PairingIncomplete(usize),
    #[error("inconsistent gluing: {0}")]
    InconsistentGluing(String),
    #[error("enumeration of {0} candidates exceeds the configured budget")]
    EnumerationBudgetExceeded(u128),
    #[error("factorization premise failed: {0}")]
    PremiseFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
