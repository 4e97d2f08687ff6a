use alloc::string::String;

/// Errors raised by the algebraic routines. Indices in messages are 1-based,
/// matching how algebras are written down.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bracket of e{0} with itself is zero by skew-symmetry")]
    SelfBracket(usize),
    #[error("bracket [e{0},e{1}] given twice")]
    DuplicateBracket(usize, usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("algebra {0} is not 2-step nilpotent")]
    NotTwoStep(String),
    #[error("algebra {0} violates the Jacobi identity")]
    NotLie(String),
    #[error("pole at t = 0 in [y{i},y{j}], coefficient of y{k}: {value}")]
    PoleAtZero { i: usize, j: usize, k: usize, value: String },
    #[error("cocycle condition fails on (e{0}, e{1}, e{2})")]
    NotCocycle(usize, usize, usize),
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("cohomological degree {k} out of range 0..={dim}")]
    DegreeOutOfRange { k: usize, dim: usize },
    #[error("verified degeneration graph has a cycle through {0}")]
    Cycle(String),
}

pub type Result<T> = core::result::Result<T, Error>;
