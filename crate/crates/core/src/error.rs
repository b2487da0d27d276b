use thiserror::Error;

use crate::operators::OperatorKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("index ({row}, {col}) out of range for dimension {dim}")]
    IndexOutOfRange { row: usize, col: usize, dim: usize },

    #[error("matrix is not self-adjoint (max |A - A^dag| = {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal mass {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("operator does not belong to the {0:?} family")]
    KindMismatch(OperatorKind),

    #[error("operator family {0:?} has no Hilbert-Schmidt dual")]
    NotDualizable(OperatorKind),

    #[error("functional violates its {law} contract (residual {residual:e})")]
    ContractViolation { law: &'static str, residual: f64 },

    #[error("recovered operator is not in the {0:?} family")]
    NotInKind(OperatorKind),

    #[error("operator is not positive")]
    NotPositive,

    #[error("operator is not a density matrix")]
    NotDensity,

    #[error("operator is not an effect")]
    NotEffect,

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("semiring mismatch: expected {expected}, got {actual}")]
    SemiringMismatch { expected: String, actual: String },

    #[error("coefficient {coeff} does not lie in the {semiring} semiring")]
    NotInSemiring { coeff: String, semiring: String },

    #[error("formal sum is not a distribution (coefficients sum to {0})")]
    NotDistribution(String),

    #[error("unknown element id {0}")]
    UnknownElement(usize),

    #[error("parse error: {0}")]
    Parse(String),
}
