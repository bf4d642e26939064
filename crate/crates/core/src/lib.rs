//! Wigner functions on the angle / orbital-angular-momentum phase space
//! `S¹ × ℝ` and its two-mode product `S¹ × S¹ × ℝ²`.
//!
//! The central object is the kernel `V_mn(θ, p)`; every Wigner function is a
//! bilinear form in it. Qubit, mixed-qubit, 2-qubit and Bell-state closed
//! forms live in [`closed_form`], marginals and overlaps in [`marginal`], and
//! an independent quadrature of the defining integral in [`oracle`].

pub mod cli;
pub mod closed_form;
pub mod error;
pub mod kernel;
pub mod marginal;
pub mod oracle;
pub mod quadrature;
pub mod spiral;
pub mod state;

pub use closed_form::{
    antipodal_two_qubit_wigner, bell_family_wigner, bell_wigner, density_wigner, qubit_terms, qubit_wigner,
    two_qubit_wigner, BellFamily, BellFamilyKind, QubitTerms,
};
pub use error::{Result, WignerError};
pub use kernel::{
    kernel_element, reduce_angle, sinc_pi, wigner_bilinear_1d, wigner_bilinear_2d, wigner_density_trace, PhasePoint,
    PhasePoint4,
};
pub use oracle::{oracle_wigner_1d, oracle_wigner_2d, verify_sinc_identities, OracleValue, DEFAULT_ORACLE_NODES};
pub use quadrature::Truncation;
pub use spiral::{InterferenceGeometry, SpiralSample};
pub use state::{
    bell_state, density_from_qubit, AnyState, BellKind, BlochDensity, GeneralState, Mode, QubitSpec, TwoModeState,
    TwoQubitModes, TwoQubitSpec,
};
