use thiserror::Error;

/// Errors raised by library operations. Failed mathematical checks are
/// usually reported as data (see the various report types); these are
/// contract violations on the inputs.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("no boundary split in degree 0")]
    SplitDegreeZero,

    #[error("basis element {0} is not in the complex")]
    NotInBasis(String),

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("map is not monotone: {0:?}")]
    NotMonotone(Vec<usize>),

    #[error("mismatched endpoints: {0}")]
    MismatchedEndpoints(String),

    #[error("truncation mismatch: {0} vs {1}")]
    TruncationMismatch(usize, usize),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("diagram does not commute: {0}")]
    NotCommuting(String),

    #[error("degree {requested} out of range (reliable up to {reliable})")]
    OutOfRange { requested: usize, reliable: usize },

    #[error("invalid simplicial set: {0}")]
    InvalidSimplicial(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),

    #[error("monoid has no order; inequality constraints need one")]
    Unordered,

    #[error("invalid category: {0}")]
    InvalidCategory(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("labeling closure failed: {0}")]
    Closure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
