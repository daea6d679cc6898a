use thiserror::Error;

/// Errors raised by the library.
///
/// Verification routines (axiom checks, module-algebra checks) do not use
/// this type for failed checks; they return reports. `Error` is for
/// malformed inputs and refused computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("conductor must lie in 2..=1000, got {0}")]
    InvalidConductor(u32),

    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),

    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("multiplication is not associative: (e{0} e{1}) e{2} != e{0} (e{1} e{2})")]
    NonAssociative(usize, usize, usize),

    #[error("matrix is singular")]
    Singular,

    #[error("operator is not diagonalizable over the ground field: eigenspaces span {found} of {dim} dimensions")]
    NotDiagonalizable { found: usize, dim: usize },

    #[error("invalid specification: {}", .0.join("; "))]
    InvalidSpec(Vec<String>),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("structure check failed: {0}")]
    Structure(String),

    #[error("computation refused: needs {required} {unit}, budget is {budget}")]
    BudgetExceeded { unit: &'static str, required: u128, budget: u128 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
