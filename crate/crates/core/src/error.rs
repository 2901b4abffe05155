use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid generator index: axis {axis}, family {family} (expected 1..=3 and 1..=2)")]
    InvalidGenerator { axis: u8, family: u8 },

    #[error("matrix is not a proper Lorentz transformation (metric defect {metric_defect:.3e}, det {det})")]
    NotLorentz { metric_defect: f64, det: f64 },

    #[error("bivector is not in the light cone (A = {a}, B = {b})")]
    NotInLightCone { a: f64, b: f64 },

    #[error("orbit is degenerate: no element of the form r(ω12 ± ω34) exists")]
    DegenerateOrbit,

    #[error("angle φ = {0} is outside the admissible range")]
    InvalidAngle(f64),

    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),

    #[error("word length must be at least 1")]
    EmptyWord,

    #[error("sample count must be at least 1")]
    NoSamples,

    #[error("span is zero-dimensional")]
    EmptySpan,

    #[error("span is not tangent to the orbit (residual {0:.3e})")]
    NotTangent(f64),

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}
