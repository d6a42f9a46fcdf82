use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("series budget exceeded after {terms} terms (partial sum {partial_sum:e}, last term {last_term:e})")]
    SeriesBudget {
        terms: usize,
        partial_sum: f64,
        last_term: f64,
    },

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("precision loss: {what} (estimated relative loss {loss:e})")]
    PrecisionLoss { what: String, loss: f64 },

    #[error("quadrature failure: best estimate {estimate:e}, error bound {error:e}")]
    Quadrature { estimate: f64, error: f64 },

    #[error("catastrophic subtraction: free kernel {free:e}, subtracted term {subtracted:e}")]
    CatastrophicSubtraction { free: f64, subtracted: f64 },

    #[error("unsupported index mu = {0}: squared-Bessel dimension 2(mu+1) must be positive")]
    UnsupportedIndex(f64),

    #[error("simulation budget exceeded: {requested} steps requested, budget {budget}")]
    Budget { requested: u64, budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
