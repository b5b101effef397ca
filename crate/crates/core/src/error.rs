use thiserror::Error;

/// Errors raised by the algebraic machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("no primitive root of unity of order {0} in {1}")]
    NoSuchRoot(u64, String),
    #[error("scalars of different kinds cannot be combined ({0} vs {1})")]
    KindMismatch(String, String),
    #[error("expected {expected} coefficients, got {got}")]
    ArityError { expected: usize, got: usize },
    #[error("elements belong to different string groups")]
    GroupMismatch,
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("invalid weight sequence: {0}")]
    InvalidWeights(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("subgroup is finite")]
    NotInfinite,
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("the zero element has no degree")]
    ZeroHasNoDegree,
    #[error("elements come from different presentations")]
    PresentationMismatch,
    #[error("weight sequence {0} is not of tubular type")]
    NotTubular(String),
    #[error("{0} does not lie in the subgroup")]
    NotInSubgroup(String),
    #[error("degree {0} is outside the domain of this view")]
    NotInDomain(String),
    #[error("homomorphism is not surjective")]
    NotSurjective,
    #[error("group order {0} is not invertible in the scalar field")]
    BadCharacteristic(u64),
    #[error("window is not usable: {0}")]
    BadWindow(String),
    #[error("structure maps do not form an equivariant object: {0}")]
    NotEquivariant(String),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
