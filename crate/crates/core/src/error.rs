use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid flag configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid weight data: {0}")]
    InvalidWeights(String),

    #[error("permutation {perm} is not a minimal coset representative for n={n}, dims={dims:?}")]
    NotMinimalRep {
        perm: String,
        n: usize,
        dims: Vec<usize>,
    },

    #[error("{d} is not one of the flag dimensions {dims:?}")]
    NotAFlagDimension { d: usize, dims: Vec<usize> },

    #[error("polynomials live in different variable universes (n={left} vs n={right})")]
    UniverseMismatch { left: usize, right: usize },

    #[error("variable {0} is not part of the universe")]
    VariableOutOfRange(String),

    #[error("not a linear form: {0}")]
    NotLinearForm(String),

    #[error("linear forms are linearly dependent")]
    DependentGenerators,

    #[error("division by {divisor} is not exact (remainder {remainder})")]
    InexactDivision { divisor: String, remainder: String },

    #[error("permutation {perm} does not fit the ambient size {m}")]
    AmbientTooSmall { perm: String, m: usize },

    #[error("u must be positive for weighted substitutions")]
    ZeroShift,

    #[error("classes do not share flavor and context")]
    ContextMismatch,

    #[error("class is not in the span of the Schubert basis: {0}")]
    NotInSpan(String),

    #[error("restriction table is incomplete: {0}")]
    MissingRestriction(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
