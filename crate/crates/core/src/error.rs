use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator must be nonzero")]
    ZeroDenominator,

    #[error("cannot normalize zero")]
    NormalizeZero,

    #[error("continued fraction coefficients must be positive, got {0}")]
    NonPositiveCoefficient(String),

    #[error("continued fraction must have at least one coefficient")]
    EmptyContinuedFraction,

    #[error("expected p > q >= 1, got {0}")]
    FractionOutOfRange(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric: entry ({row},{col}) differs from its transpose")]
    NotSymmetric { row: usize, col: usize },

    #[error("not a Seifert matrix: det(M - M^T) = {0}, expected 1")]
    NotSeifert(String),

    #[error("not a genus-1 knot form")]
    NotGenusOneForm,

    #[error("not positive definite: leading principal minor {index} equals {value}")]
    NotPositiveDefinite { index: usize, value: String },

    #[error("ambient dimension must be at least 1")]
    ZeroDimension,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("search bound must be at least 1")]
    ZeroBound,

    #[error("obstruction requires σ ≤ 0 (got σ = {0})")]
    PositiveSignature(i64),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
