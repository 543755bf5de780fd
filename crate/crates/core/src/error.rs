use thiserror::Error;

/// Failures reported by the numerical and physics routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("Bernoulli index {0} exceeds the supported maximum of 60")]
    BernoulliRange(usize),

    #[error("1F1({a}; {b}; {z}) did not converge within {terms} terms")]
    SeriesRange { a: f64, b: f64, z: f64, terms: usize },

    #[error("quadrature did not converge: estimate {estimate:e}, error bound {error:e}")]
    Convergence { estimate: f64, error: f64 },

    #[error("periodic-weight integral did not converge: last period contributed {last_period:e}")]
    SlowDecay { estimate: f64, last_period: f64 },

    #[error("oscillatory transform did not converge: last partial wave {last_term:e}")]
    Oscillatory { estimate: f64, last_term: f64 },

    #[error("wavelet is not admissible: {0}")]
    Inadmissible(String),

    #[error("unreliable derivative: estimate {estimate:e}, extrapolation error {error:e}")]
    UnreliableDerivative { estimate: f64, error: f64 },

    #[error("method `{method}` is not available for the {family} family")]
    UnsupportedMethod { method: String, family: String },

    #[error("transform cell (a = {scale}, x = {position}) failed: {message}")]
    TransformCell { scale: f64, position: f64, message: String },

    #[error("profile table: {0}")]
    ProfileTable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
