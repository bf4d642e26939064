//! The interference arguments `ϑ₊`, `ϑ₋` of the entangled families, their
//! inverse, and the spiral traced on the angle torus at fixed `ϑ₋`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::kernel::reduce_angle;
use crate::state::TwoQubitModes;

/// Linear map `(θ₁, θ₂) ↦ (ϑ₊, ϑ₋)` with
/// `ϑ₊ = Δm θ₁ + Δn θ₂ + α11` and `ϑ₋ = Δm θ₁ − Δn θ₂ − α01`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferenceGeometry {
    pub modes: TwoQubitModes,
    pub alpha11: f64,
    pub alpha01: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpiralSample {
    pub vartheta_plus: f64,
    pub theta1: f64,
    pub theta2: f64,
}

impl InterferenceGeometry {
    /// `TwoQubitModes` already rules out `m1 = m0` and `n1 = n0`.
    pub fn new(modes: TwoQubitModes, alpha11: f64, alpha01: f64) -> Self {
        Self { modes, alpha11, alpha01 }
    }

    pub fn forward(&self, theta1: f64, theta2: f64) -> (f64, f64) {
        let (dm, dn) = (self.modes.m_gap(), self.modes.n_gap());
        (dm * theta1 + dn * theta2 + self.alpha11, dm * theta1 - dn * theta2 - self.alpha01)
    }

    /// Exact inverse of [`InterferenceGeometry::forward`] on `ℝ²`; angles are
    /// not reduced.
    pub fn invert(&self, vartheta_plus: f64, vartheta_minus: f64) -> (f64, f64) {
        let (dm, dn) = (self.modes.m_gap(), self.modes.n_gap());
        (
            (vartheta_plus + vartheta_minus - self.alpha11 + self.alpha01) / (2.0 * dm),
            (vartheta_plus - vartheta_minus - self.alpha11 - self.alpha01) / (2.0 * dn),
        )
    }

    /// `(∂θ₁/∂ϑ₊, ∂θ₂/∂ϑ₊)` along the spiral.
    pub fn slopes(&self) -> (f64, f64) {
        (1.0 / (2.0 * self.modes.m_gap()), 1.0 / (2.0 * self.modes.n_gap()))
    }

    /// Range of `ϑ₊` after which the spiral closes on the torus:
    /// `4π lcm(|Δm|, |Δn|)`.
    pub fn closure_period(&self) -> f64 {
        let dm = (self.modes.m1 - self.modes.m0).unsigned_abs() as u64;
        let dn = (self.modes.n1 - self.modes.n0).unsigned_abs() as u64;
        4.0 * PI * lcm(dm, dn) as f64
    }

    /// Point of the spiral at `ϑ₊`, with `ϑ₋` held fixed; angles in `[−π, π)`.
    pub fn point_at(&self, vartheta_plus: f64, vartheta_minus: f64) -> SpiralSample {
        let (t1, t2) = self.invert(vartheta_plus, vartheta_minus);
        SpiralSample { vartheta_plus, theta1: reduce_angle(t1), theta2: reduce_angle(t2) }
    }

    /// `samples` points at uniform `ϑ₊` steps over `[0, period)`.
    pub fn spiral(&self, vartheta_minus: f64, samples: usize) -> Vec<SpiralSample> {
        let step = self.closure_period() / samples.max(1) as f64;
        (0..samples).map(|k| self.point_at(k as f64 * step, vartheta_minus)).collect()
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
