use thiserror::Error;

use crate::energy::EnergyResult;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error in {function}: {message}")]
    Domain {
        function: &'static str,
        message: String,
    },

    /// `1 - M_l` fell below the resolvable threshold; the logarithm would be noise.
    #[error("precision loss: 1 - M_l = {one_minus_m:e} for l = {l}, xi = {xi:e}")]
    PrecisionLoss { l: u32, xi: f64, one_minus_m: f64 },

    /// A hard truncation cap was reached before the tolerance was met.  The
    /// partially converged result is attached.
    #[error("no convergence in {what}: {detail}")]
    NonConvergence {
        what: &'static str,
        detail: String,
        partial: Option<Box<EnergyResult>>,
    },

    /// A Robin combination `αB + βzB'` lost more digits than can be trusted.
    #[error("cancellation in {function}: {digits:.1} significant digits lost")]
    Cancellation { function: &'static str, digits: f64 },

    #[error("quadrature failed: {0}")]
    Quadrature(String),

    #[error("unsupported dimension D = {0} (supported: 3..=16)")]
    UnsupportedDimension(u32),

    /// Asymptotic series are only evaluated for small gaps.
    #[error("eps = {eps} is outside the asymptotic regime (eps <= {max})")]
    OutOfRegime { eps: f64, max: f64 },

    #[error("pole: {0}")]
    Pole(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(function: &'static str, message: impl Into<String>) -> Self {
        Error::Domain {
            function,
            message: message.into(),
        }
    }
}
