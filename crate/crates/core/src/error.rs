use thiserror::Error;

/// Errors raised by the estimation library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The sample cannot be normalized (zero spread, too few values).
    #[error("degenerate sample: {0}")]
    Degenerate(String),

    /// No independent approximates were selected.
    #[error("empty selection of order {order} after {permutations} permutation(s) at tolerance {epsilon}; try epsilon = {suggested_epsilon} or more permutations")]
    EmptySelection {
        order: usize,
        epsilon: f64,
        permutations: usize,
        suggested_epsilon: f64,
    },

    #[error("invalid bracket [{lo}, {hi}]: g(lo) = {f_lo} and g(hi) = {f_hi} do not differ in sign")]
    InvalidBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    /// A bracketing scan found no sign change in the residual.
    #[error("no sign change on [{lo}, {hi}]: residual {g_lo} .. {g_hi}")]
    NoSignChange { lo: f64, hi: f64, g_lo: f64, g_hi: f64 },

    #[error("quadrature did not converge: estimate {value} with error {abs_error} after {evaluations} evaluations")]
    NonConvergence {
        value: f64,
        abs_error: f64,
        evaluations: usize,
    },

    /// The requested moment integral does not converge.
    #[error("divergent moment: {0}")]
    Divergent(String),

    #[error("input error: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
