use thiserror::Error;

use crate::tree::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree must be at least 2, got {0}")]
    BadDegree(usize),
    #[error("letter {letter} out of range 1..={degree}")]
    LetterOutOfRange { letter: u32, degree: usize },
    #[error("vertex {0} is a prefix of vertex {1}")]
    NotAntichain(Vertex, Vertex),
    #[error("cone weights sum to {numer}/{denom}, not 1")]
    Incomplete { numer: String, denom: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("cone index {index} out of range for an element with {len} cones")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("vertex {0} does not lie below any domain cone")]
    Unresolved(Vertex),
    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("malformed element: {0}")]
    MalformedElement(String),
    #[error("not a group table: {0}")]
    BadGroupTable(String),
    #[error("wreath coordinate {0} has nonzero abelianization class")]
    NotInCommutator(usize),
    #[error("abelian quotient has free rank {0}")]
    InfiniteQuotient(usize),
    #[error("transversal search exhausted its budget after {0} classes")]
    TransversalNotFound(usize),
    #[error("V abelianization still infinite after duplication by m = {0}")]
    AbelianizationStillInfinite(u64),
    #[error("word {0} is not in the kernel of the abelianization map")]
    NotInKernel(String),
    #[error("letter {letter} does not encode a transversal element for degree {degree}")]
    BadLetter { letter: u32, degree: usize },
    #[error("faithfulness search needs a nontrivial element")]
    IdentityInput,
    #[error("invalid ring parameters: {0}")]
    BadRing(String),
    #[error("matrix is not invertible over the ring: {0}")]
    NotInvertible(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
}

impl Error {
    /// Stable variant name, used for machine-readable error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::BadDegree(_) => "BadDegree",
            Error::LetterOutOfRange { .. } => "LetterOutOfRange",
            Error::NotAntichain(..) => "NotAntichain",
            Error::Incomplete { .. } => "Incomplete",
            Error::UnknownGenerator(_) => "UnknownGenerator",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::Unresolved(_) => "Unresolved",
            Error::GroupMismatch => "GroupMismatch",
            Error::MalformedElement(_) => "MalformedElement",
            Error::BadGroupTable(_) => "BadGroupTable",
            Error::NotInCommutator(_) => "NotInCommutator",
            Error::InfiniteQuotient(_) => "InfiniteQuotient",
            Error::TransversalNotFound(_) => "TransversalNotFound",
            Error::AbelianizationStillInfinite(_) => "AbelianizationStillInfinite",
            Error::NotInKernel(_) => "NotInKernel",
            Error::BadLetter { .. } => "BadLetter",
            Error::IdentityInput => "IdentityInput",
            Error::BadRing(_) => "BadRing",
            Error::NotInvertible(_) => "NotInvertible",
            Error::Parse { .. } => "ParseError",
            Error::Schema { .. } => "SchemaError",
        }
    }

    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema { path: path.into(), message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
