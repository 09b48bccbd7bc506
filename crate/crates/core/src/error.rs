use thiserror::Error;

use crate::counting::Method;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("instance has no values")]
    Empty,
    #[error("value at position {index} is not a positive integer")]
    NonPositive { index: usize },
    #[error("instance has {n} values, at most {max} are supported")]
    TooManyValues { n: usize, max: usize },
    #[error("sum of values must be below 2^32")]
    SumTooLarge,
    #[error("constraint |C| = {c} exceeds the number of values {n}")]
    ConstraintOutOfRange { c: i64, n: usize },
    #[error("expected {expected} spins, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("{method} backend does not accept constrained instances")]
    ConstraintUnsupported { method: Method },
    #[error("{method} backend requires a constraint")]
    ConstraintRequired { method: Method },
    #[error("{method} estimate has residual {residual:e}, above the 1e-6 tolerance")]
    Precision { method: Method, residual: f64 },
    #[error("dynamic programming table needs {cells} cells, budget is {budget}")]
    DpBudget { cells: usize, budget: usize },
    #[error("emulation needs {needed} qubits, budget is {budget}")]
    QubitBudget { needed: usize, budget: usize },
    #[error("AND network over {inputs} inputs needs {needed} ancillas, layout declares {declared}")]
    InsufficientAncillas {
        inputs: usize,
        needed: usize,
        declared: usize,
    },
    #[error("layout has no readout qubit")]
    NoReadout,
    #[error("state is not normalized (norm² = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },
    #[error("state is not the all-zero basis state")]
    NotInitialState,
    #[error("layout does not match coefficient dimensions")]
    LayoutMismatch,
    #[error("sample count {m_prime} is below the modulus {m}")]
    ModulusTooSmall { m_prime: u64, m: u64 },
    #[error("invalid grid: {0}")]
    InvalidGrid(&'static str),
}
