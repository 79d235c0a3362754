use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("root finder did not converge after {iterations} sweeps (worst residual {worst_residual:e})")]
    NonConvergence {
        iterations: usize,
        worst_residual: f64,
    },
    #[error("need at least 2 roots, got {count}")]
    InsufficientRoots { count: usize },
    #[error("coefficient list is not monic (leading coefficient {leading})")]
    NotMonic { leading: Complex64 },
    #[error("non-finite sample near {z}")]
    NonFinite { z: Complex64 },
    #[error("invalid stencil step {h}")]
    InvalidStep { h: f64 },
    #[error("a circle stencil needs at least 4 nodes, got {nodes}")]
    InvalidStencil { nodes: usize },
    #[error("omega is not positive at {z} (value {value})")]
    NonPositiveOmega { z: Complex64, value: f64 },
    #[error("spectral parameter lambda must be nonzero")]
    ZeroLambda,
    #[error("{z} is too close to the root {nearest_root}")]
    NearPole {
        z: Complex64,
        nearest_root: Complex64,
    },
    #[error("sampling radius {radius} is too small for roots up to modulus {max_root}")]
    RadiusTooSmall { radius: f64, max_root: f64 },
    #[error("need at least {required} samples, got {count}")]
    InsufficientSamples { count: usize, required: usize },
    #[error("least-squares design is numerically degenerate")]
    DegenerateDesign,
    #[error("data is inconsistent with a delta potential count (-lambda*a/2 = {value})")]
    InconsistentData { value: Complex64 },
    #[error("ambiguous root matching at t = {t} for path {path}; increase the step count")]
    AmbiguousMatching { t: f64, path: usize },
    #[error("invalid time range [{t0}, {t1}] with {steps} steps")]
    InvalidTimeRange { t0: f64, t1: f64, steps: usize },
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonConvergence { .. } => "NonConvergence",
            Error::InsufficientRoots { .. } => "InsufficientRoots",
            Error::NotMonic { .. } => "NotMonic",
            Error::NonFinite { .. } => "NonFinite",
            Error::InvalidStep { .. } => "InvalidStep",
            Error::InvalidStencil { .. } => "InvalidStencil",
            Error::NonPositiveOmega { .. } => "NonPositiveOmega",
            Error::ZeroLambda => "ZeroLambda",
            Error::NearPole { .. } => "NearPole",
            Error::RadiusTooSmall { .. } => "RadiusTooSmall",
            Error::InsufficientSamples { .. } => "InsufficientSamples",
            Error::DegenerateDesign => "DegenerateDesign",
            Error::InconsistentData { .. } => "InconsistentData",
            Error::AmbiguousMatching { .. } => "AmbiguousMatching",
            Error::InvalidTimeRange { .. } => "InvalidTimeRange",
        }
    }
}
