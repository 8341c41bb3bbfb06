use thiserror::Error;

/// Errors raised by every computation in the crate.
///
/// Variant names double as the stable error identifiers surfaced by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scalar domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("unsupported scalar domain: {0}")]
    UnsupportedDomain(String),
    #[error("invalid field descriptor: {0}")]
    InvalidField(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("composition position {position} out of range for arity {arity}")]
    PositionOutOfRange { position: usize, arity: usize },
    #[error("operad mismatch: {0}")]
    OperadMismatch(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("generator index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("table is not a group: {0}")]
    NotAGroup(String),
    #[error("table is not a monoid: {0}")]
    NotAMonoid(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("not a q-polynomial: {0}")]
    NotQPolynomial(String),
    #[error("malformed generator tree: {0}")]
    MalformedTree(String),
    #[error("truncation mismatch: {0}")]
    TruncationMismatch(String),
    #[error("degree cap {cap} too small, need at least {needed}")]
    CapTooSmall { cap: usize, needed: usize },
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("incomplete evaluation: {0}")]
    IncompleteEvaluation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable identifier of the error kind.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DomainMismatch(_) => "DomainMismatch",
            Error::NotInvertible(_) => "NotInvertible",
            Error::UnsupportedDomain(_) => "UnsupportedDomain",
            Error::InvalidField(_) => "InvalidField",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::PositionOutOfRange { .. } => "PositionOutOfRange",
            Error::OperadMismatch(_) => "OperadMismatch",
            Error::ArityMismatch { .. } => "ArityMismatch",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::InvalidPermutation(_) => "InvalidPermutation",
            Error::NotAGroup(_) => "NotAGroup",
            Error::NotAMonoid(_) => "NotAMonoid",
            Error::FieldMismatch(_) => "FieldMismatch",
            Error::NotQPolynomial(_) => "NotQPolynomial",
            Error::MalformedTree(_) => "MalformedTree",
            Error::TruncationMismatch(_) => "TruncationMismatch",
            Error::CapTooSmall { .. } => "CapTooSmall",
            Error::BoundExceeded(_) => "BoundExceeded",
            Error::IncompleteEvaluation(_) => "IncompleteEvaluation",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
