use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: node id {id} out of range ({reason})")]
    Range { line: usize, id: i64, reason: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is empty after filtering")]
    EmptyGraph,

    #[error("fit needs at least {needed} usable points, found {found}")]
    Fit { needed: usize, found: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix size {n} exceeds the dense limit {limit}")]
    SizeLimit { n: usize, limit: usize },

    #[error("{what} = {value} out of range {range}")]
    OutOfRange {
        what: &'static str,
        value: String,
        range: String,
    },

    #[error("linear system is singular at pivot {pivot}")]
    Singular { pivot: usize },

    #[error("participation ratio of a zero vector is undefined")]
    ZeroVector,

    #[error("eigensolver did not converge")]
    NoConvergence,

    #[error("eigenpair {index}: residual {residual:e} exceeds bound {bound:e}")]
    Residual { index: usize, residual: f64, bound: f64 },

    #[error("eigenvalue {index}: pairing error {error:e} exceeds tolerance {tol:e}")]
    Pairing { index: usize, error: f64, tol: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn out_of_range(what: &'static str, value: impl ToString, range: impl ToString) -> Self {
        Error::OutOfRange {
            what,
            value: value.to_string(),
            range: range.to_string(),
        }
    }
}
