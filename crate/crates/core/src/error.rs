use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("term budget exceeded: {terms} terms > budget {budget}")]
    BudgetExceeded { terms: usize, budget: usize },

    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },

    #[error("order of the zero polynomial is undefined")]
    ZeroPolynomial,

    #[error("exact division failed: divisor does not divide dividend")]
    NotDivisible,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("malformed rational literal {0:?}")]
    BadRational(String),

    #[error("{line}:{col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("matrix json: {0}")]
    MatrixJson(String),

    #[error("{0}")]
    Invalid(String),

    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
}

impl Error {
    pub(crate) fn dims(expected: usize, found: usize) -> Self {
        Error::DimensionMismatch { expected, found }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
