use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("sequence exhausted: c_{index} is beyond the prefix and no tail rule is set")]
    SequenceExhausted { index: usize },

    #[error("parameter domain error: {0}")]
    ParameterDomain(String),

    #[error("invalid coefficient c_{index} = {value}: must lie in (0, 1)")]
    InvalidCoefficient { index: usize, value: String },

    #[error("exact backend required")]
    ExactBackendRequired,

    #[error("table construction failed at (m={m}, n={n}): {reason}")]
    TableConstruction { m: usize, n: usize, reason: String },

    #[error("index ({m}, {n}) outside the derived table extent")]
    TableIndex { m: usize, n: usize },

    #[error("polynomial is not divisible by 1 - x^2")]
    NotDivisible,

    #[error("bisection for a zero of P_{degree} failed on [{lo}, {hi}]: {reason}")]
    NoConvergence { degree: usize, lo: f64, hi: f64, reason: String },

    #[error("extrapolated limit for Δ_{degree} did not settle: last gap {gap:e}")]
    Extrapolation { degree: usize, gap: f64 },

    #[error("pole proximity: |x^2 - x_k^2| = {gap:e} at x = {x}, x_k = {zero}")]
    PoleProximity { x: f64, zero: f64, gap: f64 },

    #[error("invalid scalar: {0}")]
    InvalidScalar(String),

    #[error("invalid sequence spec: {0}")]
    Spec(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
