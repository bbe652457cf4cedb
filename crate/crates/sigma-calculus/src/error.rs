use crate::algebra::Algebra;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("algebra mismatch: expected {expected}, found {found}")]
    AlgebraMismatch { expected: Algebra, found: Algebra },

    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite component encountered")]
    NonFinite,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("element is not invertible")]
    NotInvertible,

    #[error("element is not idempotent: ‖p·p − p‖ = {residual:e}")]
    NotIdempotent { residual: f64 },

    #[error("map kind `{kind}` is only defined on grid-function algebras")]
    GridOnlyKind { kind: &'static str },

    #[error("series did not converge within {max_terms} terms (params too tight)")]
    SeriesDivergence { max_terms: usize },

    #[error("word index out of range: k = {k} does not fit in {n} binary digits")]
    IndexOutOfRange { n: usize, k: u64 },

    #[error("cost guard: {what} exceeds the supported limit ({limit})")]
    CostGuard { what: &'static str, limit: u64 },

    #[error("hypothesis violated: {check} residual {residual:e} exceeds {tol:e}")]
    HypothesisViolation {
        check: String,
        residual: f64,
        tol: f64,
    },

    #[error(
        "u does not commute with the multiplicativity defect at basis pair \
         ({i},{j}): residual {residual:e}"
    )]
    CommutantViolation { i: usize, j: usize, residual: f64 },

    #[error("matrix must be square, got {rows}×{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("invalid element document: {0}")]
    BadElementDoc(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
