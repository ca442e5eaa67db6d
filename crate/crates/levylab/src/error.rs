use thiserror::Error;

/// Errors surfaced by model construction, analytic evaluation and simulation.
#[derive(Debug, Error)]
pub enum LevyError {
    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("quadrature did not reach the requested tolerance {requested:.3e}; achieved error estimate {achieved:.3e} in {context}")]
    QuadratureNonConvergence {
        context: String,
        requested: f64,
        achieved: f64,
    },

    #[error("divergent integral in {0}")]
    DivergentIntegral(String),

    #[error("log-moment condition violated: integral of log|y| over |y|>2 is infinite for this Lévy measure")]
    LogMomentViolation,

    #[error("truncation convention `none` requires finite-variation small jumps")]
    InfiniteVariation,

    #[error("expected jump count per step {expected:.3e} exceeds the cap {cap:.3e}; increase eps or decrease dt")]
    JumpCountCap { expected: f64, cap: f64 },

    #[error("thinning majorant violated at x={x:?}, y={y:?}: acceptance probability {p:.6} > 1")]
    MajorantViolation { x: Vec<f64>, y: Vec<f64>, p: f64 },

    #[error("positivity floor: phi(x) = {value:.3e} at x={x:?}")]
    NonPositivePhi { x: Vec<f64>, value: f64 },

    #[error("unsupported dimension {dim} for {context}")]
    UnsupportedDimension { dim: usize, context: String },

    #[error("characteristic function vanishes at z={z:?}; self-decomposability ratio undefined")]
    VanishingDenominator { z: Vec<f64> },
}

pub type Result<T> = std::result::Result<T, LevyError>;
