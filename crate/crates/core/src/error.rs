use thiserror::Error;

pub type Result<T> = std::result::Result<T, WignerError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WignerError {
    #[error("state is not normalized: sum of |c|^2 = {norm}")]
    NonNormalizedState { norm: f64 },

    #[error("Wigner value has imaginary residue {residue:e}")]
    NumericalHermiticityViolation { residue: f64 },

    #[error("state has an empty support")]
    EmptySupport,

    #[error("mode {0} appears more than once")]
    DuplicateMode(String),

    #[error("covering parameter {0} is outside [0, 1)")]
    InvalidDelta(f64),

    #[error("Bell states need a nonzero mode index")]
    ZeroMode,

    #[error("mode pairs must differ (m1 != m0, n1 != n0)")]
    DegenerateModes,

    #[error("Bloch vector has length {norm} > 1")]
    InvalidBlochVector { norm: f64 },

    #[error("states live in different subspaces")]
    SubspaceMismatch,

    #[error("quadrature did not converge: change {change:e} exceeds tolerance {tolerance:e}")]
    QuadratureNotConverged { change: f64, tolerance: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("cannot parse state: {0}")]
    StateParse(String),

    #[error("evaluation path `{path}` is not available for {state}")]
    UnsupportedPath { path: String, state: String },
}
