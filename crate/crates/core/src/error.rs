use thiserror::Error;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero element where a nonzero element is required")]
    ZeroElement,
    #[error("zero scalar cannot act on a module")]
    ZeroScalar,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation not supported over {0}")]
    UnsupportedDomain(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("elements live over different ambient modules")]
    AmbientMismatch,
    #[error("subgroup is not closed under the ring action")]
    NotSubmodule,
    #[error("generators do not describe a subgroup of the ambient module")]
    NotSubgroup,
    #[error("module has torsion; the envelope construction needs a torsion-free module")]
    TorsionPresent,
    #[error("empty list")]
    EmptyList,
    #[error("empty family of functions")]
    EmptyFamily,
    #[error("the ambient group is infinite")]
    InfiniteGroup,
    #[error("split does not decompose index {0} uniquely")]
    NotADirectProduct(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("outside the declared window: {0}")]
    OutOfWindow(String),
    #[error("no interior vector for identity {0}")]
    EmptyInterior(String),
    #[error("quotient is infinite and no box bound was supplied")]
    InfiniteQuotient,
    #[error("map does not intertwine the dynamics")]
    NotEquivariant,
    #[error("map is not surjective")]
    NotSurjective,
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeOverflow { degree: usize, cap: usize },
    #[error("integer overflow in module coordinates")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported scenario kind: {0}")]
    UnsupportedKind(String),
}

pub type Result<T> = std::result::Result<T, Error>;
