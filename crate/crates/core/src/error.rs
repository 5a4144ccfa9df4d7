use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("{0}")]
    Domain(String),

    #[error("index out of range [0,{total})")]
    IndexOutOfRange { index: BigUint, total: BigUint },

    /// A computation would exceed a configured memory or size cap.
    #[error("resource limit: {0}")]
    Resource(String),

    /// A computed quantity violates a packing bound.
    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("invalid data: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
