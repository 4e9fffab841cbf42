use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("unknown named set `{0}`")]
    UnknownName(String),

    #[error("basis is not orthonormal and complete (max deviation {max_dev:.3e})")]
    NonOrthonormalBasis { max_dev: f64 },

    #[error(
        "state set is not globally orthogonal: pair ({h},{k}) has overlap {overlap:.3e}"
    )]
    NotGloballyOrthogonal { h: usize, k: usize, overlap: f64 },

    #[error("state {0} is not a product state")]
    NonProductState(usize),

    #[error("state {0} is mixed; this operation handles pure and product states only")]
    MixedStatePresent(usize),

    #[error("state {index} is not a density matrix: {reason}")]
    NotDensityMatrix { index: usize, reason: String },

    #[error("invalid POVM: {0}")]
    InvalidPovm(String),

    #[error("states are not orthogonal: |<psi|phi>| = {0:.3e}")]
    NonOrthogonalPair(f64),

    #[error("basis fails verification: max residual overlap {0:.3e}")]
    BasisVerificationFailed(f64),

    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
