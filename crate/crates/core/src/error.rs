use thiserror::Error;

/// Errors raised by the kinematics, dynamics and wave-solver routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("constant `{name}` must be finite and positive, got {value}")]
    NonPositiveConstant { name: &'static str, value: f64 },

    #[error("maximum speed c_m = {c_max} must exceed light speed c = {c}")]
    MaxSpeedNotAboveLightSpeed { c: f64, c_max: f64 },

    #[error("speed {speed} is not below the maximum speed {c_max}")]
    SpeedExceedsMaximum { speed: f64, c_max: f64 },

    #[error("speed {speed} is below light speed {c}")]
    SpeedBelowLight { speed: f64, c: f64 },

    #[error("boost speed {speed} is not below the maximum speed {c_max}")]
    BoostAtMaximumSpeed { speed: f64, c_max: f64 },

    #[error("velocity composition is singular: 1 + v*u'_x/c_m^2 = 0 for v = {v}, u'_x = {ux}")]
    CompositionSingularity { v: f64, ux: f64 },

    #[error("negative interval ds^2 = {ds_squared} has no real proper time")]
    ImaginaryProperTime { ds_squared: f64 },

    #[error("time step must be finite and positive, got {dt}")]
    NonPositiveStep { dt: f64 },

    #[error("force law returned a non-finite value at t = {t}")]
    ForceLawNonFinite { t: f64 },

    #[error("characteristic mass must be finite and {requirement}, got {m_c}")]
    InvalidMass { m_c: f64, requirement: &'static str },

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("CFL violation: {detail}")]
    CflViolation { detail: String },

    #[error("stability violation: dt * omega_max = {value} exceeds bound {bound}")]
    StabilityViolation { value: f64, bound: f64 },

    #[error("field became non-finite at t = {t}")]
    NonFiniteField { t: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
