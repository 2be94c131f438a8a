use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the membrane solvers, symbols and oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("height field leaves the tubular neighbourhood: max |h| = {max_abs} >= gamma = {gamma}")]
    TubularViolation { max_abs: f64, gamma: f64 },

    #[error("bump profile too steep for this height: max |beta'| = {slope} >= gamma / max|h| = {limit}")]
    BumpSlopeViolation { slope: f64, limit: f64 },

    #[error("transmission symbols are singular at the zero wavevector")]
    ZeroMode,

    #[error("shift eta must be strictly positive here (got {eta})")]
    Shift { eta: f64 },

    #[error("boundary symbol vanishes: |s| = {modulus:e} at lambda = {lambda}, z = {z}")]
    SymbolZero {
        modulus: f64,
        lambda: Complex64,
        z: Complex64,
    },

    #[error("sector angles violate 9*vartheta < pi - theta (theta = {theta}, vartheta = {vartheta})")]
    Angle { theta: f64, vartheta: f64 },

    #[error("divergence datum must have zero mean (mean coefficient modulus = {mean_modulus:e})")]
    Compatibility { mean_modulus: f64 },

    #[error("assembled oracle system is singular (zero pivot in column {column})")]
    SingularSystem { column: usize },

    #[error("explicit stability bound violated: dt * max rate = {product} >= 2")]
    Stability { product: f64 },

    #[error("Picard iteration failed to contract (ratios {ratios:?})")]
    NoContraction { ratios: Vec<f64> },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("shape mismatch: {0}")]
    Shape(String),
}

pub type Result<T> = std::result::Result<T, Error>;
