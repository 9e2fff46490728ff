use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("division by zero in a coefficient literal")]
    DivisionByZero,
    #[error("denominator {den} vanishes in characteristic {characteristic}")]
    DenominatorVanishes { den: String, characteristic: u64 },
    #[error("malformed coefficient `{0}`")]
    BadLiteral(String),
    #[error("unknown field descriptor `{0}` (expected `Q` or `fp:<prime>`)")]
    BadDescriptor(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("quotient undefined: the second span is not contained in the first")]
    QuotientUndefined,
    #[error("vectors of unequal length ({0} vs {1})")]
    LengthMismatch(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex `{0}` declared twice")]
    DuplicateVertex(String),
    #[error("arrow `{0}` declared twice")]
    DuplicateArrow(String),
    #[error("quiver has a directed cycle through vertex `{0}`")]
    NotAcyclic(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("relation is not admissible: {0}")]
    NotAdmissible(String),
    #[error("no finite-dimensionality certificate within length cap {cap}")]
    NotFiniteDimensional { cap: usize },
    #[error("unknown arrow `{0}`")]
    InvalidArrow(String),
    #[error("path is not composable: {0}")]
    NotComposable(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeltaError {
    #[error("delta map undefined for pair ({a}, {b}): {reason}")]
    DeltaUndefined { a: String, b: String, reason: String },
    #[error("operation requires characteristic different from 2 (got {0})")]
    UnsupportedCharacteristic(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("algebra of dimension {dim} exceeds the oracle limit {limit}")]
    TooLarge { dim: usize, limit: usize },
    #[error("table is not associative at basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Umbrella error for the full analysis pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Delta(#[from] DeltaError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl Error {
    /// True for errors caused by malformed or unusable input, as opposed to
    /// operations the tool refuses to carry out on valid input.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Delta(_) | Error::Oracle(OracleError::TooLarge { .. }))
    }
}
