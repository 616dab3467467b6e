use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("the ideal has no generators")]
    EmptyIdeal,
    #[error("the unit ideal is not a valid input")]
    UnitIdeal,
    #[error("Alexander dual undefined: height {0} < 2")]
    DualUndefined(usize),
    #[error("hypergraph is not separable")]
    NotSeparable,
    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),
    #[error("hypergraph does not match any arithdeg-4 template")]
    NotClassified,
    #[error("parameters inconsistent with template H{template}: {reason}")]
    InconsistentParams { template: usize, reason: String },
    #[error("no valid Schmitt-Vogel system found: {0}")]
    ConstructionFailed(String),
    #[error("Schmitt-Vogel check failed: {0}")]
    SvCheckFailed(String),
    #[error("ideals share variables")]
    NotDisjoint,
    #[error("ideal does not embed into any member of the generic set")]
    NotInGenericSet,
    #[error("input outside the supported classes (needs mu <= 5 or arithdeg <= 4)")]
    OutOfScope,
    #[error("projective dimension depends on the characteristic: {0:?}")]
    CharDependence(Vec<(String, usize)>),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("certificate step {step} fails: difference {difference}")]
    CertificateStep { step: usize, difference: String },
    #[error("certificate rejected: {0}")]
    Certificate(String),
    #[error("time budget exhausted")]
    BudgetExhausted,
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
