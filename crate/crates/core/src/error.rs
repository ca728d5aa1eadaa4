use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("out of domain: {0}")]
    OutOfDomain(String),

    #[error("cash flow stream is empty")]
    EmptyStream,

    #[error("no candidates to select from")]
    EmptyInput,

    #[error("no sign change in bracket")]
    NoSignChange,

    #[error("root search did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("density is singular at endpoint x = {x}")]
    EndpointSingularity { x: f64 },

    /// A knowledge valuation that decreases over time.
    #[error("axiom violation: knowledge value decreased from {from} to {to}")]
    AxiomViolation { from: f64, to: f64 },

    /// The crossing period lies beyond the probe horizon.
    #[error("inconclusive: threshold not crossed by n_max, value at n_max = {value_at_n_max}")]
    Inconclusive { value_at_n_max: f64 },

    #[error("malformed stream input at line {line}: {message}")]
    Parse { line: u64, message: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::OutOfDomain(msg.into())
    }

    /// True for failures of a numerical procedure, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoSignChange
                | Error::NonConvergence { .. }
                | Error::NumericalFailure(_)
                | Error::Inconclusive { .. }
        )
    }
}
