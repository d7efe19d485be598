use thiserror::Error;

/// Errors raised by the arithmetic, decomposition and I/O layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("attempted to invert zero")]
    ZeroInversion,
    #[error("polynomial division by zero")]
    DivisionByZeroPoly,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("lcm requires nonzero arguments")]
    ZeroArgument,
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial has degree zero")]
    DegreeZero,
    #[error("operands live over different fields")]
    SpecMismatch,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrices have different sizes")]
    SizeMismatch,
    #[error("factor chain is not a divisibility chain")]
    NonDivisible,
    #[error("determinantal divisor oracle needs a nonsingular square input")]
    SingularInput,
    #[error("operation requires a finite prime field")]
    UnsupportedField,
    #[error("modulus {0} is not a prime below 2^32")]
    NonPrimeModulus(u64),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
