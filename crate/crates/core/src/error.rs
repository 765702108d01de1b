use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape: {0}")]
    Shape(String),
    #[error("bounds: {0}")]
    Bounds(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("not normal: {g} * {h} * {g}^-1 leaves the subgroup")]
    NotNormal { g: usize, h: usize },
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("not invertible: row {row} is not a permutation")]
    NotInvertible { row: usize },
    #[error("not a permutation: {0:?}")]
    NotPermutation(Vec<usize>),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("degenerate element: the identity has no derived elements")]
    DegenerateElement,
    #[error("derived element not found for group element {0}")]
    NotFound(usize),
    #[error("derived element not unique for group element {0}")]
    NotUnique(usize),
    #[error("degenerate parameters: {0}")]
    DegenerateParams(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    /// A well-formed block whose table fails its axioms.
    #[error("invalid block at line {line}: {message}")]
    Validation { line: usize, message: String },
}

impl Error {
    /// Short tag used as the machine-greppable prefix in CLI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Shape(_) => "Shape",
            Error::Bounds(_) => "Bounds",
            Error::InvalidGroup(_) => "InvalidGroup",
            Error::NotNormal { .. } => "NotNormal",
            Error::SizeMismatch { .. } => "SizeMismatch",
            Error::NotInvertible { .. } => "NotInvertible",
            Error::NotPermutation(_) => "NotPermutation",
            Error::InvalidAction(_) => "InvalidAction",
            Error::InvalidField(_) => "InvalidField",
            Error::PreconditionFailed(_) => "PreconditionFailed",
            Error::DegenerateElement => "DegenerateElement",
            Error::NotFound(_) => "NotFound",
            Error::NotUnique(_) => "NotUnique",
            Error::DegenerateParams(_) => "DegenerateParams",
            Error::Inconsistent(_) => "Inconsistent",
            Error::Parse { .. } => "Parse",
            Error::Validation { .. } => "Validation",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
