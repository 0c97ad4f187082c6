use thiserror::Error;

/// Errors raised by the embedding, chart and density routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (‖M − Mᴴ‖_F = {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not in SU(2) (unitarity deviation {unitarity:e}, |det − 1| = {det:e})")]
    NotSpecialUnitary { unitarity: f64, det: f64 },

    #[error("gate is not unitary (‖UᴴU − I‖_F = {0:e})")]
    NotUnitary(f64),

    #[error("state is not in chart C{chart} (|x{chart}| = {modulus:e})")]
    NotInChart { chart: usize, modulus: f64 },

    #[error("state is not separable (|t| = {0:e})")]
    NotSeparable(f64),

    #[error("C(t) is singular near the Bell value (|t| = {0:e})")]
    BellSingularity(f64),

    #[error("index {index} out of range 0..{bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("parameter {name} = {value} out of range")]
    ParameterOutOfRange { name: &'static str, value: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid mixture weights: {0}")]
    InvalidWeights(String),

    #[error("zero vector cannot be normalized")]
    ZeroVector,

    #[error("vector is not normalized (norm = {0})")]
    NotNormalized(f64),

    #[error("non-finite component")]
    NonFinite,

    #[error("not a unit complex number (|z| = {0})")]
    NotUnitModulus(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
