use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown graph generator `{0}`")]
    UnknownGenerator(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("linear system: {0}")]
    Solve(String),

    #[error("polynomial division left a nonzero remainder")]
    NotDivisible,

    #[error("eigenvalue with imaginary part {imag:e} exceeds tolerance {bound:e}")]
    ComplexEigenvalue { imag: f64, bound: f64 },

    #[error("component {component} is not regular")]
    NotRegular { component: usize },

    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("{0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
