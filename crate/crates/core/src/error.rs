use std::fmt;

use crate::parse::ParseError;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The zero polynomial carries no equation.
    Degenerate,
    Parse(ParseError),
    /// A point, matrix or vector had the wrong length.
    LengthMismatch { expected: usize, found: usize },
    /// Exact 128-bit arithmetic would have overflowed.
    Overflow(&'static str),
    /// Enumeration would exceed the configured work budget.
    BudgetExceeded { needed: u128, budget: u64 },
    /// A hash table would exceed the configured memory budget.
    MemoryBudgetExceeded { needed: u128, budget: u64 },
    /// The engine does not apply to this equation class.
    WrongClass(String),
    InvalidSliceVars(String),
    InvalidArgument(String),
    /// Rotation parameters must satisfy u > v >= 1.
    InvalidRotation { u: u64, v: u64 },
    InvalidAxis { i: usize, j: usize, size: usize },
    /// Homothety case 3 or 4: no scale makes the matrix integral.
    NoIntegerHomothety { case: u8, reason: String },
    SingularMatrix,
    /// A supplied witness does not solve its equation.
    NotASolution(String),
    /// Fits need at least three points with strictly increasing radii.
    InvalidFitInput(String),
    InconsistentClass(String),
    InvalidMatrix(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Degenerate => write!(f, "degenerate equation: the polynomial is identically zero"),
            Error::Parse(e) => write!(f, "{e}"),
            Error::LengthMismatch { expected, found } => {
                write!(f, "length mismatch: expected {expected}, found {found}")
            }
            Error::Overflow(what) => write!(f, "integer overflow in {what}"),
            Error::BudgetExceeded { needed, budget } => write!(
                f,
                "work budget exceeded: {needed} iterations needed, budget is {budget}"
            ),
            Error::MemoryBudgetExceeded { needed, budget } => write!(
                f,
                "memory budget exceeded: {needed} table entries needed, budget is {budget}"
            ),
            Error::WrongClass(msg) => write!(f, "wrong equation class: {msg}"),
            Error::InvalidSliceVars(msg) => write!(f, "invalid slice variables: {msg}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::InvalidRotation { u, v } => {
                write!(f, "rotation parameters need u > v >= 1, got u={u}, v={v}")
            }
            Error::InvalidAxis { i, j, size } => {
                write!(f, "invalid axis pair ({i}, {j}) for size {size}")
            }
            Error::NoIntegerHomothety { case, reason } => {
                write!(f, "no integer homothety exists (case {case}): {reason}")
            }
            Error::SingularMatrix => write!(f, "matrix is singular"),
            Error::NotASolution(msg) => write!(f, "not a solution: {msg}"),
            Error::InvalidFitInput(msg) => write!(f, "invalid fit input: {msg}"),
            Error::InconsistentClass(msg) => write!(f, "inconsistent equation class: {msg}"),
            Error::InvalidMatrix(msg) => write!(f, "invalid matrix: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
