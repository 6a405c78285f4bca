use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Verdicts such as "not semistable" are never errors; they are reported
/// through [`crate::stability::Verdict`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("characteristic {0} is not supported (need p > 3)")]
    UnsupportedCharacteristic(u64),
    #[error("modulus polynomial is not irreducible")]
    ReducibleModulus,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("singular curve (discriminant vanishes)")]
    SingularCurve,
    #[error("point is not on the curve")]
    PointOffCurve,
    #[error("divisor has degree {0}, expected degree zero")]
    NonZeroDegree(i64),
    #[error("operation needs the places to be rational; base change of degree {0} required")]
    BaseChangeRequired(u32),
    #[error("zero function")]
    ZeroFunction,
    #[error("wedge of the chosen sections vanishes identically")]
    IdenticallyZeroWedge,
    #[error("expected {expected} sections, found {found}")]
    SectionCountMismatch { expected: usize, found: usize },
    #[error("top wedge of the sections vanishes identically")]
    TopWedgeVanishes,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("precision exhausted while expanding at a place")]
    PrecisionExhausted,
}

pub type Result<T> = std::result::Result<T, Error>;
