use thiserror::Error;

/// A functional witnessing that a vector is not a coboundary.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    /// where the obstruction lives, e.g. a label pair
    pub location: String,
    /// nonzero coordinates of the functional, by basis name
    pub functional: Vec<(String, String)>,
    /// value of the functional on the obstruction
    pub value: String,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid cut level: {0}")]
    InvalidCutLevel(String),
    #[error("e0 = {e0} exceeds e_min = {e_min}")]
    MinimalEnergyViolation { e0: String, e_min: String },
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("degree error: {0}")]
    DegreeError(String),
    #[error("cannot raise cut from {cut} to {requested}")]
    CutRaiseError { cut: String, requested: String },
    #[error("promotion obstructed{}: {}", stage.map(|s| format!(" at stage {s}")).unwrap_or_default(), certificate.location)]
    PromotionObstructed {
        stage: Option<usize>,
        certificate: Box<Certificate>,
    },
    #[error("precondition failed: {}", .0.join("; "))]
    PreconditionFailed(Vec<String>),
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("out of domain: {0}")]
    OutOfDomain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },
}

impl Error {
    pub fn at_stage(self, stage: usize) -> Error {
        match self {
            Error::PromotionObstructed { certificate, .. } => Error::PromotionObstructed {
                stage: Some(stage),
                certificate,
            },
            e => e,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
