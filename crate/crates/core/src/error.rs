use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LadmError {
    #[error("initial amplitude must be nonzero")]
    ZeroAmplitude,

    #[error("Adomian polynomial of order {order} needs {needed} iterates, got {available}")]
    MissingIterates {
        order: usize,
        needed: usize,
        available: usize,
    },

    #[error("monomial nonlinearity must have at least one factor")]
    EmptyMonomial,

    #[error("monomial nonlinearity has a zero coefficient")]
    ZeroCoefficient,

    #[error("nonlinear operator has no monomials")]
    EmptyOperator,

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error(
        "closed form at t = {t} requires crossing the principal branch cut \
         (|u0^-4 - 1| = {radius} >= 1)"
    )]
    BranchCut { t: f64, radius: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

pub type Result<T> = std::result::Result<T, LadmError>;
