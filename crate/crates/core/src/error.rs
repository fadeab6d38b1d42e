use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("density vanishes at the requested quantile (u = {u})")]
    DegenerateDensity { u: f64 },
    #[error("quadrature did not converge: error estimate {error_estimate:.3e} after {subdivisions} subdivisions")]
    IntegrationFailure {
        error_estimate: f64,
        subdivisions: usize,
    },
    #[error("integrand returned a non-finite value at u = {u}")]
    NonFinite { u: f64 },
    #[error("subdivision budget of {budget} panels exhausted")]
    MaxSubdivisions { budget: usize },
    #[error("mean is zero within tolerance")]
    ZeroMean,
    #[error("alpha = {alpha} outside the parameter interval ({lo}, {hi})")]
    AlphaOutOfRange { alpha: f64, lo: f64, hi: f64 },
    #[error("u = {u} outside [0, 1]")]
    UOutOfRange { u: f64 },
    #[error("theta = {theta} outside the parameter interval [{lo}, {hi}]")]
    ThetaOutOfRange { theta: f64, lo: f64, hi: f64 },
    #[error("unknown distortion model `{0}`")]
    InvalidModel(String),
    #[error("the gah model requires a cumulative adjustment function K")]
    MissingK,
    #[error("unknown copula family `{0}`")]
    InvalidFamilyId(String),
    #[error("conditional distribution is not invertible at u = {u}, w = {w}")]
    NoRoot { u: f64, w: f64 },
    #[error("x = {x} outside the support ({lo}, {hi})")]
    OutsideSupport { x: f64, lo: f64, hi: f64 },
    #[error("window ({lo}, {hi}) not contained in the parameter interval")]
    WindowOutsideInterval { lo: f64, hi: f64 },
    #[error("extremum search did not converge")]
    Nonconvergence,
    #[error("{check} requires {what}")]
    MissingContext { check: String, what: String },
    #[error("distortion inverse did not converge at v = {v}")]
    InverseFailure { v: f64 },
    #[error("denominator E(X) + E(X_alpha) is zero within tolerance")]
    ZeroDenominator,
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
