use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series variable mismatch: {0} vs {1}")]
    VarMismatch(String, String),
    #[error("truncation order mismatch: N={0} vs N={1}")]
    OrderMismatch(usize, usize),
    #[error("grading mismatch between operands")]
    GradingMismatch,
    #[error("not a unit: {0}")]
    NonUnit(String),
    #[error("coefficient of exponent {requested} requested but only known through {known}")]
    WindowExceeded { requested: i64, known: i64 },
    #[error("polar input where a regular series is required (lowest exponent {0})")]
    PolarInput(i32),
    #[error("node context mismatch")]
    ContextMismatch,
    #[error("pair of Laurent series is not in the image of the node algebra: {0}")]
    NotInImage(String),
    #[error("symbolic expansion window too short: {0}")]
    InsufficientWindow(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown basis label {0}")]
    UnknownLabel(String),
    #[error("non-convergent input: {0}")]
    NonConvergent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
