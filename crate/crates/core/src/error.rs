use thiserror::Error;

/// Errors shared by the state algebra, factorization, and set operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The ingested dense matrix is not Hermitian within tolerance.
    #[error("matrix is not Hermitian: max |M - M^H| entry is {deviation:e}")]
    NonHermitianInput { deviation: f64 },

    /// A value does not describe a physical qubit state.
    #[error("not a valid qubit state: {0}")]
    InvalidState(String),

    /// A pair of effect coefficients does not describe a binary test.
    #[error("not a valid binary test: {0}")]
    InvalidTest(String),

    /// A Pauli vector is too short to define a measurement axis.
    #[error("direction is degenerate: Pauli vector norm below {0:e}")]
    DegenerateDirection(f64),

    /// A probing direction must have at least one non-zero entry.
    #[error("probing direction must be non-zero and finite")]
    ZeroDirection,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// The closed-form ellipse is undefined for collinear or orthogonal pairs.
    #[error("alpha = {0} is degenerate; use the degenerate pair constraint instead")]
    DegenerateAlpha(f64),

    #[error("parameter {name} = {value} is outside its valid range {range}")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("a state family needs at least one state")]
    EmptyFamily,
}

pub type Result<T> = std::result::Result<T, Error>;
