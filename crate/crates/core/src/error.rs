use thiserror::Error;

/// Errors surfaced by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("variable count mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("elementary symmetric degree {k} exceeds variable count {n}")]
    BadDegree { k: usize, n: usize },

    #[error("degree {found} in variable z{var} exceeds reduction bound {bound}")]
    DegreeExceeded { var: usize, found: u32, bound: u32 },

    #[error("bad input: {0}")]
    BadInput(String),

    #[error("elementary transformation not applicable: {0}")]
    NotApplicable(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("form has odd degree {0}; Gram matrices need an even degree")]
    OddDegree(u32),

    #[error("no feasible Gram matrix to factor (status {0})")]
    NotCertified(String),

    #[error("no positive semidefinite Gram matrix found: {0}")]
    NotSos(String),

    #[error("leading residue in z{var} is not a constant matrix (the input cannot be positive real)")]
    NotConstantResidue { var: usize },

    #[error("matrix is not positive semidefinite: {0}")]
    NotPsd(String),

    #[error("denominator is constant in variable {var}")]
    DenominatorDegenerate { var: usize },

    #[error("terminal function is not of the form z*A with constant A")]
    BaseNotConstant,

    #[error("terminal coefficient is not positive semidefinite")]
    BaseNotPsd,

    #[error("input is not positive real: {0}")]
    NotPositiveReal(Box<Error>),

    #[error("function is not multiaffine; the Wronskian criterion does not apply")]
    NotMultiaffine,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("realization check failed: {0}")]
    Verification(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
