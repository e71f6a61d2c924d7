use thiserror::Error;

/// Errors produced by the solver library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("grid dimension {axis} = {value} is below the minimum of {min}")]
    DimensionTooSmall {
        axis: &'static str,
        value: usize,
        min: usize,
    },
    #[error("extent {name} must be positive, got {value}")]
    NonPositiveExtent { name: &'static str, value: f64 },
    #[error("fields are defined on different grids")]
    GridMismatch,
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error("{name} out of range: {value}")]
    OutOfRange { name: &'static str, value: f64 },
    #[error("zero pivot encountered at row {row}")]
    ZeroPivot { row: usize },
    #[error("invalid dimension: {0}")]
    Dimension(String),
    #[error("line of length {len} is too short, need at least {min}")]
    LineTooShort { len: usize, min: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("solution blew up at t = {time}: {detail}")]
    BlowUp { time: f64, detail: String },
    #[error("inner iteration did not converge after {iterations} iterations at t = {time} (err = {err:e})")]
    InnerNotConverged {
        iterations: usize,
        time: f64,
        err: f64,
    },
    #[error("stream function solve did not converge after {iterations} iterations (residual {residual:e})")]
    PoissonNotConverged { iterations: usize, residual: f64 },
    #[error("too few samples: got {got}, need {need}")]
    TooFewSamples { got: usize, need: usize },
    #[error("series is not periodic")]
    NotPeriodic,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("invalid value for `{key}`: {value}")]
    InvalidValue { key: String, value: String },
    #[error("missing required key `{0}`")]
    MissingKey(String),
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
