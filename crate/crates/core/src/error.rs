use thiserror::Error;

/// Errors raised by the algebra kernel, the constructions and the drivers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("prime {0} is not supported: {1}")]
    UnsupportedPrime(u64, &'static str),

    /// A coefficient denominator vanishes modulo the chosen prime.
    #[error("bad prime {0}: a coefficient denominator is divisible by it")]
    BadPrime(u64),

    #[error("polynomials belong to different rings")]
    RingMismatch,

    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,

    #[error("variable `{0}` is not bound")]
    UnboundVariable(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("degenerate intersection: the two lines coincide")]
    DegenerateIntersection,

    #[error("structural error: {0}")]
    Structural(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("resource budget exceeded after {elapsed_ms} ms ({basis_len} basis elements, {pairs_left} pairs pending)")]
    BudgetExceeded {
        elapsed_ms: u128,
        basis_len: usize,
        pairs_left: usize,
    },

    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),

    #[error("invalid Lamé configuration: {0}")]
    InvalidLame(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
