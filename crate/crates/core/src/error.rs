use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("local dimension {0} is not prime")]
    NotPrime(u32),

    #[error("shape mismatch: expected {expected}, found {found}")]
    Shape { expected: String, found: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("measurement outcome {requested} contradicts deterministic outcome {forced}")]
    Contradiction { requested: u32, forced: u32 },

    #[error("qudits {0:?} are entangled with the rest of the system")]
    Entangled(Vec<usize>),

    #[error("input is not an AME state: {0}")]
    NotAme(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("state too large for dense simulation: {0} amplitudes")]
    TooLarge(u128),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn shape_err(expected: impl ToString, found: impl ToString) -> Error {
    Error::Shape {
        expected: expected.to_string(),
        found: found.to_string(),
    }
}
