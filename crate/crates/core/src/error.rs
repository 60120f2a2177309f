use thiserror::Error;

use crate::ratpoly::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse rational {input:?}: {reason}")]
    ParseRational { input: String, reason: &'static str },

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("degree mismatch: {0}")]
    Degree(String),

    #[error("simple roots required, but {0} is repeated")]
    RepeatedRoot(Rational),

    #[error("multi-index out of range: {0}")]
    Index(String),

    #[error("no sign change on [{lo}, {hi}]")]
    Bracket {
        lo: Box<Rational>,
        hi: Box<Rational>,
    },

    #[error("accuracy target {requested:e} not met (achieved {achieved:e} after {evaluations} evaluations)")]
    Accuracy {
        requested: f64,
        achieved: f64,
        evaluations: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
