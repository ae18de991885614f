use thiserror::Error;

/// Errors raised by the library. Variant names mirror the failure modes of
/// each operation so that callers (and the CLI) can report them verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("illegal sum: +inf and -inf cannot be added")]
    IllegalSum,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero vector has no canonical direction")]
    ZeroVector,
    #[error("input vectors are linearly dependent (vector {index})")]
    DependentInput { index: usize },
    #[error("no supporting direction exists (origin lies in the relative interior of the hull)")]
    NoSupport,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("direction {i} is not orthogonal to direction {j}")]
    NotOrthogonal { i: usize, j: usize },
    #[error("tail is not orthogonal to direction {index}")]
    TailNotOrthogonal { index: usize },
    #[error("direction {index} is the zero vector")]
    ZeroDirection { index: usize },
    #[error("depth {depth} exceeds dimension {dim}")]
    TooDeep { depth: usize, dim: usize },
    #[error("the convex hull contains the origin")]
    ContainsOrigin,
    #[error("affine function is not finite at the rebase point")]
    NotFiniteAtPoint,
    #[error("anchor point lies outside the effective domain")]
    AnchorOutsideDomain,
    #[error("no extended subgradient available at {point}")]
    SelectorUnavailable { point: String },
    #[error("unknown outcome label {0:?}")]
    UnknownLabel(String),
    #[error("prediction {point} lies outside the effective domain")]
    PredOutsideDomain { point: String },
    #[error("scoring rule is not regular (an entry is +inf)")]
    NotRegular,
    #[error("prediction {point} is not in the table")]
    UnknownPred { point: String },
    #[error("scoring rule is not proper on its grid")]
    NotProper,
    #[error("set function is not monotone: G({smaller}) < G({larger})")]
    NotMonotone { smaller: String, larger: String },
    #[error("bad interval: need 0 <= a < b <= 1")]
    BadInterval,
    #[error("operation requires binary outcomes, found {0}")]
    NonBinary(usize),
    #[error("convex function evaluated to -inf at {point}")]
    ImproperValue { point: String },
    #[error("invalid distribution: {0}")]
    InvalidDist(String),
    #[error("invalid outcome set: {0}")]
    InvalidOutcomes(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown catalog entry {0:?}")]
    UnknownCatalogEntry(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
