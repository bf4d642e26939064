//! Direct formulas for the qubit, mixed-qubit, 2-qubit and Bell-state Wigner
//! functions. Each one is cross-checked against the kernel double sum in the
//! test suite; the double sum is treated as ground truth.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Result, WignerError};
use crate::kernel::{sinc_pi, PhasePoint, PhasePoint4};
use crate::state::{check_delta, BellKind, BlochDensity, Mode, QubitSpec, TwoModeState, TwoQubitModes, TwoQubitSpec};

const INV_TWO_PI: f64 = 1.0 / TAU;
const INV_TWO_PI_SQ: f64 = INV_TWO_PI * INV_TWO_PI;

/// The two pieces of a qubit Wigner function, both already divided by 2π.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitTerms {
    /// θ-independent probability part.
    pub diagonal: f64,
    /// The cos-interference term, the only θ-dependent part.
    pub interference: f64,
}

impl QubitTerms {
    pub fn total(&self) -> f64 {
        self.diagonal + self.interference
    }
}

pub fn qubit_terms(spec: &QubitSpec, point: PhasePoint) -> QubitTerms {
    let (m0, m1) = (spec.m0() as f64, spec.m1() as f64);
    let (delta, beta, p) = (spec.delta(), spec.beta(), point.p);
    let (sb, cb) = beta.sin_cos();
    let diagonal = cb * cb * sinc_pi(p - m0 - delta) + sb * sb * sinc_pi(p - m1 - delta);
    let interference = (2.0 * beta).sin()
        * ((m0 - m1) * point.theta - spec.alpha()).cos()
        * sinc_pi(p - (m0 + m1 + 2.0 * delta) / 2.0);
    QubitTerms { diagonal: INV_TWO_PI * diagonal, interference: INV_TWO_PI * interference }
}

/// Wigner function of `cos β e_{m0,δ} + sin β e^{iα} e_{m1,δ}`.
pub fn qubit_wigner(spec: &QubitSpec, point: PhasePoint) -> f64 {
    qubit_terms(spec, point).total()
}

/// Wigner function of `ρ = (I + a·σ)/2`.
pub fn density_wigner(rho: &BlochDensity, point: PhasePoint) -> f64 {
    let (m0, m1) = (rho.m0() as f64, rho.m1() as f64);
    let [a1, a2, a3] = rho.bloch_vector();
    let (delta, p) = (rho.delta(), point.p);
    let (s, c) = ((m0 - m1) * point.theta).sin_cos();
    INV_TWO_PI
        * ((1.0 + a3) / 2.0 * sinc_pi(p - m0 - delta)
            + (1.0 - a3) / 2.0 * sinc_pi(p - m1 - delta)
            + (a1 * c + a2 * s) * sinc_pi(p - (m0 + m1 + 2.0 * delta) / 2.0))
}

/// Sinc factors of one torus axis, centred on shifted mode values.
struct AxisSinc {
    p: f64,
    delta: f64,
}

impl AxisSinc {
    fn at(&self, centre: f64) -> f64 {
        sinc_pi(self.p - centre - self.delta)
    }
}

/// The general 2-qubit Wigner function (ten terms), every sinc centre shifted
/// by the covering parameter of its axis.
pub fn two_qubit_wigner(spec: &TwoQubitSpec, point: PhasePoint4) -> f64 {
    let TwoQubitModes { m0, m1, n0, n1 } = spec.modes();
    let (m0, m1, n0, n1) = (m0 as f64, m1 as f64, n0 as f64, n1 as f64);
    let [b00, b10, b01, b11] = spec.amplitudes();
    let [a10, a01, a11] = spec.phases();
    let (d1, d2) = spec.deltas();
    let s1 = AxisSinc { p: point.p1, delta: d1 };
    let s2 = AxisSinc { p: point.p2, delta: d2 };
    let (mh, nh) = ((m0 + m1) / 2.0, (n0 + n1) / 2.0);
    let (dm, dn) = (m1 - m0, n1 - n0);
    let (t1, t2) = (point.theta1, point.theta2);

    let total = b00 * b00 * s1.at(m0) * s2.at(n0)
        + b10 * b10 * s1.at(m1) * s2.at(n0)
        + b01 * b01 * s1.at(m0) * s2.at(n1)
        + b11 * b11 * s1.at(m1) * s2.at(n1)
        + 2.0 * b00 * b10 * (dm * t1 + a10).cos() * s1.at(mh) * s2.at(n0)
        + 2.0 * b00 * b01 * (dn * t2 + a01).cos() * s1.at(m0) * s2.at(nh)
        + 2.0 * b00 * b11 * (dm * t1 + dn * t2 + a11).cos() * s1.at(mh) * s2.at(nh)
        + 2.0 * b01 * b10 * (dm * t1 - dn * t2 + a10 - a01).cos() * s1.at(mh) * s2.at(nh)
        + 2.0 * b01 * b11 * (dm * t1 + a11 - a01).cos() * s1.at(mh) * s2.at(n1)
        + 2.0 * b10 * b11 * (dn * t2 + a11 - a10).cos() * s1.at(m1) * s2.at(nh);
    INV_TWO_PI_SQ * total
}

/// The simplified 2-qubit form for `m1 = −m0`, `n0 = m0`, `n1 = −m0` and
/// `α10 = 0` (a total-OAM-zero pair decaying into opposite modes).
pub fn antipodal_two_qubit_wigner(spec: &TwoQubitSpec, point: PhasePoint4) -> Result<f64> {
    let TwoQubitModes { m0, m1, n0, n1 } = spec.modes();
    let [a10, a01, a11] = spec.phases();
    if m1 != -m0 || n0 != m0 || n1 != -m0 || a10 != 0.0 {
        return Err(WignerError::InvalidParameter(
            "simplified form needs m1 = -m0, n0 = m0, n1 = -m0 and alpha10 = 0".into(),
        ));
    }
    let m = m0 as f64;
    let k = 2.0 * m;
    let [b00, b10, b01, b11] = spec.amplitudes();
    let (d1, d2) = spec.deltas();
    let s1 = AxisSinc { p: point.p1, delta: d1 };
    let s2 = AxisSinc { p: point.p2, delta: d2 };
    let (t1, t2) = (point.theta1, point.theta2);

    let total = b00 * b00 * s1.at(m) * s2.at(m)
        + b10 * b10 * s1.at(-m) * s2.at(m)
        + b01 * b01 * s1.at(m) * s2.at(-m)
        + b11 * b11 * s1.at(-m) * s2.at(-m)
        + 2.0 * b00 * b10 * (k * t1).cos() * s1.at(0.0) * s2.at(m)
        + 2.0 * b00 * b01 * (k * t2 - a01).cos() * s1.at(m) * s2.at(0.0)
        + 2.0 * b00 * b11 * (k * (t1 + t2) - a11).cos() * s1.at(0.0) * s2.at(0.0)
        + 2.0 * b01 * b10 * (k * (t1 - t2) + a01).cos() * s1.at(0.0) * s2.at(0.0)
        + 2.0 * b01 * b11 * (k * t1 - (a11 - a01)).cos() * s1.at(0.0) * s2.at(-m)
        + 2.0 * b10 * b11 * (k * t2 - a11).cos() * s1.at(-m) * s2.at(0.0);
    Ok(INV_TWO_PI_SQ * total)
}

/// Wigner functions of the four EPR/Bell states on the modes `±m0`.
pub fn bell_wigner(kind: BellKind, m0: Mode, point: PhasePoint4) -> Result<f64> {
    if m0 == 0 {
        return Err(WignerError::ZeroMode);
    }
    let m = m0 as f64;
    let (p1, p2) = (point.p1, point.p2);
    let (diagonal, angle) = if kind.is_phi() {
        (
            0.5 * sinc_pi(p1 - m) * sinc_pi(p2 - m) + 0.5 * sinc_pi(p1 + m) * sinc_pi(p2 + m),
            2.0 * m * (point.theta1 + point.theta2),
        )
    } else {
        (
            0.5 * sinc_pi(p1 - m) * sinc_pi(p2 + m) + 0.5 * sinc_pi(p1 + m) * sinc_pi(p2 - m),
            2.0 * m * (point.theta1 - point.theta2),
        )
    };
    let interference = kind.sign() * angle.cos() * sinc_pi(p1) * sinc_pi(p2);
    Ok(INV_TWO_PI_SQ * (diagonal + interference))
}

/// The two one-parameter entangled families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellFamilyKind {
    /// `cos β e_{m0n0} + sin β e^{iα11} e_{m1n1}`
    ZeroZeroOneOne,
    /// `cos γ e_{m1n0} + sin γ e^{iα01} e_{m0n1}`
    OneZeroZeroOne,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellFamily {
    pub kind: BellFamilyKind,
    pub modes: TwoQubitModes,
    /// β for `00-11`, γ for `10-01`.
    pub angle: f64,
    /// α11 for `00-11`, α01 for `10-01`.
    pub phase: f64,
    pub delta1: f64,
    pub delta2: f64,
}

impl BellFamily {
    pub fn new(kind: BellFamilyKind, modes: TwoQubitModes, angle: f64, phase: f64) -> Result<Self> {
        if !angle.is_finite() || !phase.is_finite() {
            return Err(WignerError::InvalidParameter("mixing angle and phase must be finite".into()));
        }
        Ok(Self { kind, modes, angle, phase, delta1: 0.0, delta2: 0.0 })
    }

    pub fn with_deltas(self, delta1: f64, delta2: f64) -> Result<Self> {
        Ok(Self { delta1: check_delta(delta1)?, delta2: check_delta(delta2)?, ..self })
    }

    pub fn to_state(&self) -> TwoModeState {
        let TwoQubitModes { m0, m1, n0, n1 } = self.modes;
        let (s, c) = self.angle.sin_cos();
        let (first, second) = match self.kind {
            BellFamilyKind::ZeroZeroOneOne => ((m0, n0), (m1, n1)),
            BellFamilyKind::OneZeroZeroOne => ((m1, n0), (m0, n1)),
        };
        let coefficients = [(first, Complex64::new(c, 0.0)), (second, Complex64::from_polar(s, self.phase))]
            .into_iter()
            .filter(|(_, z)| *z != Complex64::default());
        TwoModeState::from_raw_parts(coefficients, self.delta1, self.delta2)
            .expect("Bell family yields a valid support")
    }

    /// The cos-interference argument (`ϑ₊` or `ϑ₋`) at `(θ₁, θ₂)`.
    pub fn interference_argument(&self, theta1: f64, theta2: f64) -> f64 {
        let (dm, dn) = (self.modes.m_gap(), self.modes.n_gap());
        match self.kind {
            BellFamilyKind::ZeroZeroOneOne => dm * theta1 + dn * theta2 + self.phase,
            BellFamilyKind::OneZeroZeroOne => dm * theta1 - dn * theta2 - self.phase,
        }
    }

    /// The interference term alone, divided by `(2π)²`.
    pub fn interference_term(&self, point: PhasePoint4) -> f64 {
        let TwoQubitModes { m0, m1, n0, n1 } = self.modes;
        let s1 = AxisSinc { p: point.p1, delta: self.delta1 };
        let s2 = AxisSinc { p: point.p2, delta: self.delta2 };
        INV_TWO_PI_SQ
            * (2.0 * self.angle).sin()
            * self.interference_argument(point.theta1, point.theta2).cos()
            * s1.at((m0 + m1) as f64 / 2.0)
            * s2.at((n0 + n1) as f64 / 2.0)
    }
}

/// Wigner function of a member of either entangled family.
pub fn bell_family_wigner(family: &BellFamily, point: PhasePoint4) -> f64 {
    let TwoQubitModes { m0, m1, n0, n1 } = family.modes;
    let (m0, m1, n0, n1) = (m0 as f64, m1 as f64, n0 as f64, n1 as f64);
    let s1 = AxisSinc { p: point.p1, delta: family.delta1 };
    let s2 = AxisSinc { p: point.p2, delta: family.delta2 };
    let (s, c) = family.angle.sin_cos();
    let diagonal = match family.kind {
        BellFamilyKind::ZeroZeroOneOne => c * c * s1.at(m0) * s2.at(n0) + s * s * s1.at(m1) * s2.at(n1),
        BellFamilyKind::OneZeroZeroOne => c * c * s1.at(m1) * s2.at(n0) + s * s * s1.at(m0) * s2.at(n1),
    };
    INV_TWO_PI_SQ * diagonal + family.interference_term(point)
}
