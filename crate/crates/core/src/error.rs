use thiserror::Error;

use crate::model::ProblemTag;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("board size must be positive")]
    ZeroSize,

    #[error("{0:?} has no obstruction matrix of this family")]
    WrongFamily(ProblemTag),

    #[error("{vars} variables exceed the 64-bit assignment width")]
    TooManyVariables { vars: usize },

    #[error("assignment length {got} does not match {expected} variables")]
    LengthMismatch { expected: usize, got: usize },

    #[error("matrix is not square ({rows} rows, row {row} has {cols} columns)")]
    NotSquare { rows: usize, row: usize, cols: usize },

    #[error("diagonal vector must have odd length 2n-1, got {0}")]
    EvenDiagonalCount(usize),

    #[error("{what} of size {n} exceeds the limit of {limit}")]
    TooLarge { what: &'static str, n: usize, limit: usize },

    #[error("ring elements mix moduli {0} and {1}")]
    MixedModuli(usize, usize),

    #[error("value at a primitive {order}-th root of unity is not an integer")]
    NotRational { order: usize },

    #[error("index {index} outside {lo}..={hi}")]
    OutOfRange { index: i64, lo: i64, hi: i64 },

    #[error("{problem:?} at n = {n} needs ~{predicted} work units, ceiling is {ceiling}")]
    WorkCeiling {
        problem: ProblemTag,
        n: usize,
        predicted: String,
        ceiling: String,
    },

    #[error("{0:?} is not supported by this method")]
    Unsupported(ProblemTag),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
