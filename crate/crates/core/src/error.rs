use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zeta has a pole at s = 1 (got s = {s})")]
    Pole { s: f64 },

    #[error("argument {value} is outside the supported domain {domain}")]
    Domain { value: f64, domain: &'static str },

    #[error("closed-form derivative is only available at s = 0 and s = -1 (got s = {s})")]
    UnsupportedPoint { s: f64 },

    #[error("precision of {digits} digits is outside the supported range")]
    Precision { digits: usize },

    #[error("invalid model parameters: {0}")]
    InvalidParameters(String),

    #[error("weight b_{index} is not defined by the model")]
    UndefinedWeight { index: usize },

    #[error("scale a_{index} is not defined by the model or lies outside (0, 1]")]
    UndefinedScale { index: usize },

    #[error("custom models have no derivable spectrum; supply the spectral data explicitly")]
    CustomModel,

    #[error("spectrum document: {0}")]
    Schema(String),

    #[error("poles must be strictly increasing and positive (pole {index} = {rho})")]
    PoleOrdering { index: usize, rho: f64 },

    #[error("residue h_{index} = {value} must be positive")]
    NonPositiveResidue { index: usize, value: f64 },

    #[error("ineligible spectrum: 2*rho_(r-1) - rho_r = {gap} > 0")]
    IneligibleSpectrum { gap: f64 },

    #[error("Khintchine equation cannot be bracketed for n = {n} within [1e-12, 1e12]")]
    NoBracket { n: u64 },

    #[error("Khintchine solver did not converge for n = {n} after {iterations} iterations")]
    NonConvergence { n: u64, iterations: usize },

    #[error("unsupported model: {0}")]
    UnsupportedModel(String),
}
