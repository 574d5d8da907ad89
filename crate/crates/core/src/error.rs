use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at position {position}: expected {expected}, found {found}")]
    Parse { position: usize, expected: String, found: String },

    #[error("{gamma} ∉ {set} for kind {kind}")]
    Membership { kind: char, gamma: String, set: &'static str },

    #[error("invalid group data: {0}")]
    InvalidGroup(String),

    #[error("scaling factor must be nonzero")]
    ZeroScaling,

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("not degree-zero-derivation-shaped at {witness}: {detail}")]
    Shape { witness: String, detail: String },

    #[error("inconsistent {what} across the window: {witness}")]
    Inconsistent { what: String, witness: String },

    #[error("not a derivation of pure degree: operators differ at {witness}")]
    NotPureDegree { witness: String },

    #[error("operator has no declared nonzero degree")]
    DegreeZeroOrUndeclared,

    #[error("not a cocycle: {detail} at {witness}")]
    NotACocycle { witness: String, detail: String },

    #[error("factorization step {step} failed at {witness}: {detail}")]
    FactorStep { step: &'static str, witness: String, detail: String },

    #[error("recomposition mismatch at {witness}: residual {residual}")]
    Recomposition { witness: String, residual: String },

    #[error("window too small: {0}")]
    WindowTooSmall(String),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
