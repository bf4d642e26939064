//! Phase-space points, the cardinal sine, the Wigner kernel `V_mn(θ, p)` and
//! the bilinear Wigner forms built from it.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Result, WignerError};
use crate::state::{BlochDensity, GeneralState, Mode, TwoModeState};

/// Imaginary parts above this are reported as a hermiticity violation.
pub const HERMITICITY_TOLERANCE: f64 = 1e-10;

const INV_TWO_PI: f64 = 1.0 / TAU;

/// Reduces an angle into `[−π, π)` by subtracting the nearest multiple of 2π.
pub fn reduce_angle(theta: f64) -> f64 {
    let r = theta - TAU * (theta / TAU).round();
    if r >= PI {
        r - TAU
    } else if r < -PI {
        r + TAU
    } else {
        r
    }
}

/// A point `(θ, p)` of the cylinder `S¹ × ℝ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub theta: f64,
    pub p: f64,
}

impl PhasePoint {
    /// # Panics
    /// If either coordinate is not finite.
    pub fn new(theta: f64, p: f64) -> Self {
        assert!(theta.is_finite() && p.is_finite(), "phase point ({theta}, {p}) is not finite");
        Self { theta: reduce_angle(theta), p }
    }
}

/// A point `(θ₁, θ₂, p₁, p₂)` of `S¹ × S¹ × ℝ²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint4 {
    pub theta1: f64,
    pub theta2: f64,
    pub p1: f64,
    pub p2: f64,
}

impl PhasePoint4 {
    /// # Panics
    /// If any coordinate is not finite.
    pub fn new(theta1: f64, theta2: f64, p1: f64, p2: f64) -> Self {
        assert!(
            [theta1, theta2, p1, p2].iter().all(|x| x.is_finite()),
            "phase point ({theta1}, {theta2}, {p1}, {p2}) is not finite"
        );
        Self { theta1: reduce_angle(theta1), theta2: reduce_angle(theta2), p1, p2 }
    }

    pub fn first(&self) -> PhasePoint {
        PhasePoint { theta: self.theta1, p: self.p1 }
    }

    pub fn second(&self) -> PhasePoint {
        PhasePoint { theta: self.theta2, p: self.p2 }
    }
}

/// `sin(πx)` with exact argument reduction, so that nonzero integers give 0.
fn sin_pi(x: f64) -> f64 {
    // x - 2k is exact for |x| < 2^52
    let r = x - 2.0 * (x / 2.0).round();
    let (sign, r) = if r < 0.0 { (-1.0, -r) } else { (1.0, r) };
    let r = if r > 0.5 { 1.0 - r } else { r };
    sign * (PI * r).sin()
}

/// `sin(πx)/(πx)`, equal to 1 at `x = 0`.
pub fn sinc_pi(x: f64) -> f64 {
    let y = PI * x;
    if y.abs() < 1e-4 {
        let y2 = y * y;
        1.0 - y2 / 6.0 * (1.0 - y2 / 20.0 * (1.0 - y2 / 42.0 * (1.0 - y2 / 72.0)))
    } else {
        sin_pi(x) / y
    }
}

/// A single matrix element of the Wigner kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelElement {
    pub value: Complex64,
}

impl KernelElement {
    pub fn conj(self) -> Self {
        Self { value: self.value.conj() }
    }
}

/// `V_mn(θ, p) = e^{i(n−m)θ} sinc π[p − (m+n+2δ)/2] / 2π`.
pub fn kernel_element(m: Mode, n: Mode, delta: f64, point: PhasePoint) -> KernelElement {
    let centre = (m as f64 + n as f64 + 2.0 * delta) / 2.0;
    let amplitude = INV_TWO_PI * sinc_pi(point.p - centre);
    let value = if m == n {
        Complex64::new(amplitude, 0.0)
    } else {
        Complex64::from_polar(amplitude, (n - m) as f64 * point.theta)
    };
    KernelElement { value }
}

/// The unchecked double sum `Σ c_m* V_mn c_n`, imaginary part included.
pub fn bilinear_sum_1d(state: &GeneralState, point: PhasePoint) -> Complex64 {
    let delta = state.delta();
    let coeffs = state.coefficients();
    let mut acc = Complex64::default();
    for &(m, cm) in coeffs {
        for &(n, cn) in coeffs {
            acc += cm.conj() * kernel_element(m, n, delta, point).value * cn;
        }
    }
    acc
}

/// The unchecked sum `Σ c*_{mn} V_mk(θ₁,p₁;δ₁) V_nl(θ₂,p₂;δ₂) c_kl`.
pub fn bilinear_sum_2d(state: &TwoModeState, point: PhasePoint4) -> Complex64 {
    let (d1, d2) = state.deltas();
    let (first, second) = (point.first(), point.second());
    let coeffs = state.coefficients();
    let mut acc = Complex64::default();
    for &((m, n), cmn) in coeffs {
        for &((k, l), ckl) in coeffs {
            let v = kernel_element(m, k, d1, first).value * kernel_element(n, l, d2, second).value;
            acc += cmn.conj() * v * ckl;
        }
    }
    acc
}

fn real_part(z: Complex64) -> Result<f64> {
    if z.im.abs() > HERMITICITY_TOLERANCE {
        Err(WignerError::NumericalHermiticityViolation { residue: z.im.abs() })
    } else {
        Ok(z.re)
    }
}

/// Wigner function of a one-mode state via the kernel double sum.
pub fn wigner_bilinear_1d(state: &GeneralState, point: PhasePoint) -> Result<f64> {
    state.check_normalized()?;
    real_part(bilinear_sum_1d(state, point))
}

/// Wigner function of a two-mode state via the product kernel.
pub fn wigner_bilinear_2d(state: &TwoModeState, point: PhasePoint4) -> Result<f64> {
    state.check_normalized()?;
    real_part(bilinear_sum_2d(state, point))
}

/// `tr(ρ V)` with `V_{jk} = V_{m_j m_k}`, the mixed-state Wigner function.
pub fn wigner_density_trace(rho: &BlochDensity, point: PhasePoint) -> f64 {
    let modes = [rho.m0(), rho.m1()];
    let matrix = rho.matrix();
    let mut acc = Complex64::default();
    for (j, &mj) in modes.iter().enumerate() {
        for (k, &mk) in modes.iter().enumerate() {
            acc += matrix[k][j] * kernel_element(mj, mk, rho.delta(), point).value;
        }
    }
    acc.re
}
