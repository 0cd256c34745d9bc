use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A family, sequence or method parameter is outside its admissible range.
    #[error("parameter out of bounds: {0}")]
    ParameterBounds(String),

    #[error("integer square root of negative value {0}")]
    NegativeInput(BigInt),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// The balance system has no unique solution (more than one closed class).
    #[error("singular balance system: no unique stationary distribution")]
    Singular,

    /// Power iteration ran out of iterations. `last` is the final iterate.
    #[error("power iteration did not converge within {iterations} iterations (last change {last_change:e})")]
    NonConvergence {
        iterations: usize,
        last_change: f64,
        last: Vec<f64>,
    },

    #[error("start state {start} out of range for a chain with {n} states")]
    StateOutOfRange { start: usize, n: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn bounds(msg: impl Into<String>) -> Self {
        Error::ParameterBounds(msg.into())
    }
}
