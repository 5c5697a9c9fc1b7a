use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("monomials live in different ambient rings ({0} vs {1} variables)")]
    MixedAmbient(usize, usize),
    #[error("support is empty")]
    EmptySupport,
    #[error("ideal is not squarefree")]
    NotSquarefree,
    #[error("ideal must be nonzero and proper")]
    TrivialIdeal,
    #[error("bitset path supports at most 64 variables, got {0}")]
    TooManyVariables(usize),
    #[error("Hilbert numerator is not divisible by (1-t)^{0}")]
    NotDivisible(usize),
    #[error("Taylor complex limited to {limit} generators, got {got}")]
    TooManyGenerators { got: usize, limit: usize },
    #[error("slice tail of length {got} invalid for dimension {dim}")]
    BadTailLength { got: usize, dim: usize },
    #[error("point set is not a tower set")]
    NotTowerSet,
    #[error("point set is not a left segment")]
    NotLeftSegment,
    #[error("degree table does not cover segment size {0:?}")]
    DegreeTableTooSmall(Vec<u32>),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("invalid point set: {0}")]
    InvalidPointSet(String),
    #[error("invalid prime support: {0}")]
    InvalidSupport(String),
    #[error("genericity violated: {0}")]
    GenericityViolation(String),
    #[error("{0} is not a column of the tower set")]
    BadColumn(u32),
    #[error("search size cap exceeded: {0}")]
    SizeCapExceeded(String),
    #[error("not a generalized tower set: {0}")]
    NotGts(String),
    #[error("ideal is not aCM")]
    NotAcm,
    #[error("ideal does not have height 2 (height {0})")]
    NotHeightTwo(usize),
    #[error("invalid standard-form matrix: {0}")]
    InvalidMatrix(String),
    #[error("syzygy tree does not regenerate the ideal: {0}")]
    StandardFormVerificationFailed(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

impl Error {
    /// True for errors that signal a broken theorem or structural invariant
    /// rather than bad input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(
            self,
            Error::InternalInvariantViolation(_) | Error::StandardFormVerificationFailed(_)
        )
    }
}
