use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("{what} is not a cocycle: differential is nonzero at {witness}")]
    NotACocycle { what: String, witness: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown component `{0}` (expected psi, rho or b)")]
    InvalidPart(String),

    #[error("formula anomaly: {0}")]
    FormulaAnomaly(String),

    #[error("problem too large: {coordinates} cochain coordinates exceeds the limit of {limit}")]
    Infeasible { coordinates: usize, limit: usize },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
