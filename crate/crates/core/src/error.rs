use core::fmt;

use crate::modrep::Parity;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// The defining relations of SL(2,Z) checked by validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// S⁴ = I
    SFourth,
    /// (ST)³ = S²
    Braid,
    /// S² T = T S²
    CentralSquare,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::SFourth => "S^4 = I",
            Relation::Braid => "(ST)^3 = S^2",
            Relation::CentralSquare => "S^2 T = T S^2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {left_rows}x{left_cols} times {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix has {expected} entries declared but {found} supplied")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("matrix entry is not finite")]
    NonFinite,
    #[error("S and T images have different degrees ({s} and {t})")]
    DegreeMismatch { s: usize, t: usize },
    #[error("tolerance must lie in (0, 1e-3), got {0}")]
    InvalidTolerance(f64),
    #[error("{value} is not within {eps:e} of an integer")]
    SnapFailure { value: f64, eps: f64 },
    #[error("relation {relation} violated (residual {residual:e})")]
    RelationViolation { relation: Relation, residual: f64 },
    #[error("T has no finite order up to {cap}")]
    TOrderNotFound { cap: usize },
    #[error("group closure exceeded {cap} elements")]
    ClosureCapExceeded { cap: usize },
    #[error("eigenspaces of S^2 have dimensions {even} + {odd}, expected {degree}")]
    ProjectorDefect { even: usize, odd: usize, degree: usize },
    #[error("representation is not purely {expected}")]
    ParityError { expected: Parity },
    #[error("matrix is numerically singular")]
    Singular,
    #[error("signature ({alpha}, {beta1}, {beta2}) is out of range for degree {d}")]
    InvalidSignature { d: i64, alpha: i64, beta1: i64, beta2: i64 },
    #[error("exponent trace and eigenphases differ by a non-integer")]
    TraceInconsistency,
    #[error("weight-1 dimension of a reducible odd part is not determined by global invariants")]
    Weight1Indeterminate,
    #[error("formula produced negative value {value} at weight {weight}")]
    NegativeDimension { weight: i64, value: i64 },
    #[error("{0}")]
    InvalidArgument(&'static str),
}
