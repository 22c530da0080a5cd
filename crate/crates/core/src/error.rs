use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Operands disagree on shape, modulus, group or bit length.
    #[error("parameter mismatch: {0}")]
    Parameter(String),

    #[error("matrix is not invertible")]
    NotInvertible,

    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Parameters are well formed but make the scheme trivially weak.
    #[error("degenerate parameter: {0}")]
    Degenerate(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("search space of 2^{log2_candidates} candidates exceeds the cap of 2^{log2_cap}")]
    SizeLimit { log2_candidates: u64, log2_cap: u32 },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("malformed group table: {0}")]
    GroupTable(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn mismatch(what: impl Into<String>) -> Error {
    Error::Parameter(what.into())
}
