use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("matrix is not unitary (max deviation {deviation:.3e} exceeds tolerance {tol:.1e})")]
    NotUnitary { deviation: f64, tol: f64 },

    #[error("arity mismatch: oracle acts on {expected} qubits, basis assignment has {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("size limit exceeded: {what} is {got}, limit is {limit}")]
    SizeLimit {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
