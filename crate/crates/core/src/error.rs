use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown catalog id `{0}`")]
    UnknownCatalog(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("index {index} overflows the weight definition: {reason}")]
    IndexOverflow { index: u64, reason: String },
    #[error("index {index} is beyond the custom table (length {len})")]
    OutOfTable { index: u64, len: usize },
    #[error("quadrature did not converge: {msg}; trace (intervals, |estimate|, error) = {trace:?}")]
    Quadrature { msg: String, trace: Vec<(usize, f64, f64)> },
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("symbol not evaluable: {0}")]
    NotEvaluable(String),
    #[error("grid cap {cap} reached: achieved error {achieved:e}, target {target:e}")]
    GridCap { cap: usize, achieved: f64, target: f64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("search cap exceeded: {0}")]
    SearchCap(String),
    #[error("tail certificate mismatch: {0}")]
    TailMismatch(String),
    #[error("column {column} cannot be certified: {reason}")]
    Uncertifiable { column: usize, reason: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("config error at line {line}, column {column}: {msg}")]
    Config { msg: String, line: usize, column: usize },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}
