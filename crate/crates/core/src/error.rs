use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable sets do not match")]
    VarSetMismatch,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial is not bihomogeneous with respect to the variable bipartition")]
    NotBihomogeneous,
    #[error("the zero polynomial has no associated algebra")]
    ZeroPolynomial,
    #[error("invalid degree: {0}")]
    InvalidDegree(String),
    #[error("{size}x{size} matrix exceeds the symbolic cap of {cap}; use generic_rank")]
    SymbolicCapExceeded { size: usize, cap: usize },
    #[error("invalid simplicial complex: {0}")]
    InvalidComplex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("variable `{0}` already exists")]
    VariableCollision(String),
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error("the given forms are linearly dependent")]
    LinearlyDependent,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
