//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("gamma pole at non-positive integer argument {0}")]
    GammaPole(f64),
    #[error("invalid special-function parameters: {0}")]
    InvalidParams(String),
    #[error("series did not converge: {0}")]
    NoConverge(String),
    #[error("parameter constraint violated: {0}")]
    Constraint(String),
    #[error("nodelessness check failed: sign change near {coordinate} (value {value})")]
    Nodelessness { coordinate: f64, value: f64 },
    #[error("no turning points: integrand negative on the whole domain")]
    NoBracket,
    #[error("turning-point scan found an odd number of sign changes ({0})")]
    InconsistentScan(usize),
    #[error("{count} turning-point brackets found; pass the multi-bracket flag to sum them")]
    MultiBracket { count: usize },
    #[error("quadrature did not converge at order {order} (last delta {delta:e})")]
    QuadratureNoConverge { order: usize, delta: f64 },
    #[error("integrand negative inside bracket: f({t}) = {value:e}")]
    NegativeIntegrand { t: f64, value: f64 },
    #[error("unsupported combination: {0}")]
    Unsupported(String),
    #[error("wave function vanishes at the evaluation point (|psi| = {0:e})")]
    NearNode(f64),
    #[error("contour passes too close to a singularity near ({re}, {im})")]
    ContourNearSingularity { re: f64, im: f64 },
    #[error("point outside the open natural domain: {0}")]
    Domain(f64),
    #[error("energy bracket failure: I(E_hi) = {i_hi} < target {target}")]
    SpectrumBracket { i_hi: f64, target: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
