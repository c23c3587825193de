//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised by equation-of-state construction and evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EosError {
    #[error("temperature {t} outside eos domain [{lo}, {hi}]")]
    TemperatureOutOfDomain { t: f64, lo: f64, hi: f64 },

    #[error("volume {v} outside eos domain [{lo}, {hi}]")]
    VolumeOutOfDomain { v: f64, lo: f64, hi: f64 },

    #[error("volume must be positive, got {0}")]
    NonPositiveVolume(f64),

    #[error("invalid branch {index}: {reason}")]
    InvalidBranch { index: usize, reason: String },

    #[error("invalid segment {index}: {reason}")]
    InvalidSegment { index: usize, reason: String },

    #[error("derivative e_T discontinuous at knot T = {t}: {left} vs {right}")]
    DerivativeMismatchAtKnot { t: f64, left: f64, right: f64 },

    #[error("eos needs at least one branch/segment")]
    Empty,

    #[error("first branch/segment parameter cannot be derived by matching")]
    FirstParameterUnderdetermined,

    #[error("reference point {0} not inside eos domain")]
    ReferenceOutsideDomain(f64),
}

/// Errors raised while evaluating or sampling a shock polar.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolarError {
    #[error("upstream Mach number must exceed 1, got {0}")]
    SubsonicUpstream(f64),

    #[error("gamma must exceed -1, got {0}")]
    GammaOutOfRange(f64),

    #[error("parameter {param} outside polar range [{lo}, {hi}]")]
    ParamOutOfRange { param: f64, lo: f64, hi: f64 },

    #[error("thermodynamic state undefined for gamma = {0}")]
    ThermoUndefined(f64),

    #[error("parameter {0} beyond the normal-shock endpoint (eta^2 < 0)")]
    BeyondNormalShock(f64),

    #[error("eos domain too short: no normal shock bracket before {limit}")]
    EosDomainTooShort { limit: f64 },

    #[error("positive root of the pressure equation is non-positive (P/P0 = {0})")]
    NonPositivePressure(f64),

    #[error("point is not compressive (mass-flux denominator {0} <= 0)")]
    NonCompressive(f64),

    #[error("inconsistent state: eta^2 = {0} < 0")]
    InconsistentState(f64),

    #[error("need at least {min} sample points, got {got}")]
    TooFewSamples { min: usize, got: usize },

    #[error("sampled xi values are not strictly increasing near index {0}")]
    NonMonotoneXi(usize),

    #[error("parameter {0} at a polar endpoint: curvature is undefined there")]
    EndpointDegenerate(f64),

    #[error(transparent)]
    Eos(#[from] EosError),
}

impl PolarError {
    /// True for errors that indicate bad input rather than a failed computation.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            PolarError::SubsonicUpstream(_)
                | PolarError::GammaOutOfRange(_)
                | PolarError::TooFewSamples { .. }
                | PolarError::Eos(
                    EosError::InvalidBranch { .. }
                        | EosError::InvalidSegment { .. }
                        | EosError::Empty
                        | EosError::FirstParameterUnderdetermined
                        | EosError::ReferenceOutsideDomain(_)
                )
        )
    }
}
