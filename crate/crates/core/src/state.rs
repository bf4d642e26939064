//! State representations on `L²(S¹, dφ/2π; δ)` and its two-mode tensor product.
//!
//! Every state stores a sorted sparse list of `(mode, coefficient)` pairs
//! together with its covering parameter δ. Qubit, 2-qubit and Bell-state
//! parametrizations are thin constructors on top of [`GeneralState`] and
//! [`TwoModeState`].

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Result, WignerError};

/// Tolerance on `Σ|c|² = 1`.
pub const NORM_TOLERANCE: f64 = 1e-12;

pub type Mode = i32;

pub(crate) fn check_delta(delta: f64) -> Result<f64> {
    if delta.is_finite() && (0.0..1.0).contains(&delta) {
        Ok(delta)
    } else {
        Err(WignerError::InvalidDelta(delta))
    }
}

fn check_finite(name: &str, x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(WignerError::InvalidParameter(format!("{name} = {x} is not finite")))
    }
}

/// Reduces a phase into `[0, 2π)`.
pub fn wrap_phase(alpha: f64) -> f64 {
    let r = alpha.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// A finite superposition `Σ c_m e_{m,δ}` of angular momentum eigenfunctions.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralState {
    coefficients: Vec<(Mode, Complex64)>,
    delta: f64,
}

impl GeneralState {
    /// Builds a normalized state; fails if `Σ|c_m|²` is off by more than
    /// [`NORM_TOLERANCE`].
    pub fn new(coefficients: impl IntoIterator<Item = (Mode, Complex64)>, delta: f64) -> Result<Self> {
        let state = Self::from_raw_parts(coefficients, delta)?;
        state.check_normalized()?;
        Ok(state)
    }

    /// Builds the state after rescaling the coefficients to unit norm.
    pub fn normalized(coefficients: impl IntoIterator<Item = (Mode, Complex64)>, delta: f64) -> Result<Self> {
        let mut state = Self::from_raw_parts(coefficients, delta)?;
        let norm = state.norm_sqr().sqrt();
        if norm == 0.0 {
            return Err(WignerError::NonNormalizedState { norm: 0.0 });
        }
        for (_, c) in &mut state.coefficients {
            *c /= norm;
        }
        Ok(state)
    }

    /// Validates support and δ but not the normalization. Wigner evaluations
    /// on such a state report [`WignerError::NonNormalizedState`].
    pub fn from_raw_parts(coefficients: impl IntoIterator<Item = (Mode, Complex64)>, delta: f64) -> Result<Self> {
        let delta = check_delta(delta)?;
        let mut coefficients: Vec<_> = coefficients.into_iter().collect();
        if coefficients.is_empty() {
            return Err(WignerError::EmptySupport);
        }
        coefficients.sort_by_key(|&(m, _)| m);
        for w in coefficients.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(WignerError::DuplicateMode(w[0].0.to_string()));
            }
        }
        if coefficients.iter().any(|(_, c)| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(WignerError::InvalidParameter("non-finite coefficient".into()));
        }
        Ok(Self { coefficients, delta })
    }

    pub fn basis(m: Mode, delta: f64) -> Result<Self> {
        Self::new([(m, Complex64::new(1.0, 0.0))], delta)
    }

    pub fn coefficients(&self) -> &[(Mode, Complex64)] {
        &self.coefficients
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn modes(&self) -> impl Iterator<Item = Mode> + '_ {
        self.coefficients.iter().map(|&(m, _)| m)
    }

    pub fn coefficient(&self, m: Mode) -> Complex64 {
        self.coefficients.binary_search_by_key(&m, |&(k, _)| k).map(|i| self.coefficients[i].1).unwrap_or_default()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coefficients.iter().map(|(_, c)| c.norm_sqr()).sum()
    }

    pub fn check_normalized(&self) -> Result<()> {
        let norm = self.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            Err(WignerError::NonNormalizedState { norm })
        } else {
            Ok(())
        }
    }

    /// Same coefficients on a different covering.
    pub fn with_delta(&self, delta: f64) -> Result<Self> {
        Ok(Self { coefficients: self.coefficients.clone(), delta: check_delta(delta)? })
    }

    /// Largest `|m|` in the support.
    pub fn max_abs_mode(&self) -> Mode {
        self.modes().map(|m| m.abs()).max().unwrap_or(0)
    }

    /// `ψ(φ) = Σ c_m e^{i(m+δ)φ}`.
    pub fn wave_function(&self, phi: f64) -> Complex64 {
        self.coefficients.iter().map(|&(m, c)| c * Complex64::cis((m as f64 + self.delta) * phi)).sum()
    }

    /// `Σ (m+δ)|c_m|²`.
    pub fn expectation_l(&self) -> f64 {
        self.coefficients.iter().map(|&(m, c)| (m as f64 + self.delta) * c.norm_sqr()).sum()
    }

    /// Scalar product `(self, other)`, antilinear in `self`.
    pub fn inner(&self, other: &GeneralState) -> Result<Complex64> {
        if self.delta != other.delta {
            return Err(WignerError::SubspaceMismatch);
        }
        Ok(self.coefficients.iter().map(|&(m, c)| c.conj() * other.coefficient(m)).sum())
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self.coefficients.iter().map(|&(m, c)| json!([m, c.re, c.im])).collect();
        json!({ "delta": self.delta, "coefficients": rows })
    }
}

/// A finite superposition `Σ c_{mn} e_{m,δ₁} ⊗ e_{n,δ₂}` on the torus.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    coefficients: Vec<((Mode, Mode), Complex64)>,
    delta1: f64,
    delta2: f64,
}

impl TwoModeState {
    pub fn new(
        coefficients: impl IntoIterator<Item = ((Mode, Mode), Complex64)>,
        delta1: f64,
        delta2: f64,
    ) -> Result<Self> {
        let state = Self::from_raw_parts(coefficients, delta1, delta2)?;
        state.check_normalized()?;
        Ok(state)
    }

    pub fn normalized(
        coefficients: impl IntoIterator<Item = ((Mode, Mode), Complex64)>,
        delta1: f64,
        delta2: f64,
    ) -> Result<Self> {
        let mut state = Self::from_raw_parts(coefficients, delta1, delta2)?;
        let norm = state.norm_sqr().sqrt();
        if norm == 0.0 {
            return Err(WignerError::NonNormalizedState { norm: 0.0 });
        }
        for (_, c) in &mut state.coefficients {
            *c /= norm;
        }
        Ok(state)
    }

    pub fn from_raw_parts(
        coefficients: impl IntoIterator<Item = ((Mode, Mode), Complex64)>,
        delta1: f64,
        delta2: f64,
    ) -> Result<Self> {
        let delta1 = check_delta(delta1)?;
        let delta2 = check_delta(delta2)?;
        let mut coefficients: Vec<_> = coefficients.into_iter().collect();
        if coefficients.is_empty() {
            return Err(WignerError::EmptySupport);
        }
        coefficients.sort_by_key(|&(mn, _)| mn);
        for w in coefficients.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(WignerError::DuplicateMode(format!("{:?}", w[0].0)));
            }
        }
        if coefficients.iter().any(|(_, c)| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(WignerError::InvalidParameter("non-finite coefficient".into()));
        }
        Ok(Self { coefficients, delta1, delta2 })
    }

    pub fn basis(m: Mode, n: Mode, delta1: f64, delta2: f64) -> Result<Self> {
        Self::new([((m, n), Complex64::new(1.0, 0.0))], delta1, delta2)
    }

    /// `a ⊗ b`, with the deltas of the factors.
    pub fn product(a: &GeneralState, b: &GeneralState) -> Result<Self> {
        let coefficients =
            a.coefficients().iter().flat_map(|&(m, ca)| b.coefficients().iter().map(move |&(n, cb)| ((m, n), ca * cb)));
        Self::from_raw_parts(coefficients, a.delta(), b.delta())
    }

    pub fn coefficients(&self) -> &[((Mode, Mode), Complex64)] {
        &self.coefficients
    }

    pub fn deltas(&self) -> (f64, f64) {
        (self.delta1, self.delta2)
    }

    pub fn coefficient(&self, m: Mode, n: Mode) -> Complex64 {
        self.coefficients.binary_search_by_key(&(m, n), |&(k, _)| k).map(|i| self.coefficients[i].1).unwrap_or_default()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coefficients.iter().map(|(_, c)| c.norm_sqr()).sum()
    }

    pub fn check_normalized(&self) -> Result<()> {
        let norm = self.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            Err(WignerError::NonNormalizedState { norm })
        } else {
            Ok(())
        }
    }

    pub fn with_deltas(&self, delta1: f64, delta2: f64) -> Result<Self> {
        Ok(Self { coefficients: self.coefficients.clone(), delta1: check_delta(delta1)?, delta2: check_delta(delta2)? })
    }

    /// Largest `|m|` (first factor) and `|n|` (second factor) in the support.
    pub fn max_abs_modes(&self) -> (Mode, Mode) {
        self.coefficients.iter().fold((0, 0), |(a, b), &((m, n), _)| (a.max(m.abs()), b.max(n.abs())))
    }

    pub fn wave_function(&self, phi1: f64, phi2: f64) -> Complex64 {
        self.coefficients
            .iter()
            .map(|&((m, n), c)| c * Complex64::cis((m as f64 + self.delta1) * phi1 + (n as f64 + self.delta2) * phi2))
            .sum()
    }

    /// Total OAM expectation `Σ (m+n+δ₁+δ₂)|c_{mn}|²`.
    pub fn expectation_l(&self) -> f64 {
        self.coefficients
            .iter()
            .map(|&((m, n), c)| (m as f64 + n as f64 + self.delta1 + self.delta2) * c.norm_sqr())
            .sum()
    }

    pub fn inner(&self, other: &TwoModeState) -> Result<Complex64> {
        if self.deltas() != other.deltas() {
            return Err(WignerError::SubspaceMismatch);
        }
        Ok(self.coefficients.iter().map(|&((m, n), c)| c.conj() * other.coefficient(m, n)).sum())
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self.coefficients.iter().map(|&((m, n), c)| json!([m, n, c.re, c.im])).collect();
        json!({ "delta1": self.delta1, "delta2": self.delta2, "coefficients": rows })
    }
}

/// Either kind of pure state, as read from a JSON document.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyState {
    OneMode(GeneralState),
    TwoMode(TwoModeState),
}

impl AnyState {
    pub fn to_json(&self) -> Value {
        match self {
            AnyState::OneMode(s) => s.to_json(),
            AnyState::TwoMode(s) => s.to_json(),
        }
    }
}

fn json_mode(v: &Value) -> Result<Mode> {
    let x = v.as_f64().ok_or_else(|| WignerError::StateParse(format!("mode index {v} is not a number")))?;
    if x.fract() != 0.0 || x.abs() > Mode::MAX as f64 {
        return Err(WignerError::StateParse(format!("mode index {v} is not an integer")));
    }
    Ok(x as Mode)
}

fn json_real(v: &Value) -> Result<f64> {
    v.as_f64().ok_or_else(|| WignerError::StateParse(format!("{v} is not a number")))
}

fn json_delta(doc: &Value, key: &str) -> Result<f64> {
    match doc.get(key) {
        None | Some(Value::Null) => Ok(0.0),
        Some(v) => json_real(v),
    }
}

/// Parses `{"delta": d, "coefficients": [[m, re, im], ...]}` or
/// `{"delta1": d1, "delta2": d2, "coefficients": [[m, n, re, im], ...]}`.
///
/// With `normalize` the coefficients are rescaled; otherwise they must already
/// be normalized.
pub fn parse_state_json(text: &str, normalize: bool) -> Result<AnyState> {
    let doc: Value = serde_json::from_str(text).map_err(|e| WignerError::StateParse(e.to_string()))?;
    let rows = doc
        .get("coefficients")
        .and_then(Value::as_array)
        .ok_or_else(|| WignerError::StateParse("missing `coefficients` array".into()))?;
    let rows: Vec<&Vec<Value>> = rows
        .iter()
        .map(|r| r.as_array().ok_or_else(|| WignerError::StateParse(format!("row {r} is not an array"))))
        .collect::<Result<_>>()?;
    let width = rows.first().map(|r| r.len()).ok_or(WignerError::EmptySupport)?;
    if rows.iter().any(|r| r.len() != width) {
        return Err(WignerError::StateParse("coefficient rows have different lengths".into()));
    }
    match width {
        3 => {
            let coefficients = rows
                .iter()
                .map(|r| Ok((json_mode(&r[0])?, Complex64::new(json_real(&r[1])?, json_real(&r[2])?))))
                .collect::<Result<Vec<_>>>()?;
            let delta = json_delta(&doc, "delta")?;
            let state = if normalize {
                GeneralState::normalized(coefficients, delta)?
            } else {
                GeneralState::new(coefficients, delta)?
            };
            Ok(AnyState::OneMode(state))
        }
        4 => {
            let coefficients = rows
                .iter()
                .map(|r| {
                    Ok(((json_mode(&r[0])?, json_mode(&r[1])?), Complex64::new(json_real(&r[2])?, json_real(&r[3])?)))
                })
                .collect::<Result<Vec<_>>>()?;
            let (d1, d2) = (json_delta(&doc, "delta1")?, json_delta(&doc, "delta2")?);
            let state = if normalize {
                TwoModeState::normalized(coefficients, d1, d2)?
            } else {
                TwoModeState::new(coefficients, d1, d2)?
            };
            Ok(AnyState::TwoMode(state))
        }
        w => Err(WignerError::StateParse(format!("rows must have 3 or 4 entries, got {w}"))),
    }
}

/// `cos β e_{m0,δ} + sin β e^{iα} e_{m1,δ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitSpec {
    m0: Mode,
    m1: Mode,
    alpha: f64,
    beta: f64,
    delta: f64,
}

impl QubitSpec {
    /// `beta` must lie in `[0, π/2]`; `alpha` is reduced into `[0, 2π)`.
    pub fn new(m0: Mode, m1: Mode, alpha: f64, beta: f64) -> Result<Self> {
        if m0 == m1 {
            return Err(WignerError::DegenerateModes);
        }
        let alpha = wrap_phase(check_finite("alpha", alpha)?);
        let beta = check_finite("beta", beta)?;
        if !(0.0..=PI / 2.0).contains(&beta) {
            return Err(WignerError::InvalidParameter(format!("beta = {beta} outside [0, π/2]")));
        }
        Ok(Self { m0, m1, alpha, beta, delta: 0.0 })
    }

    pub fn with_delta(self, delta: f64) -> Result<Self> {
        Ok(Self { delta: check_delta(delta)?, ..self })
    }

    pub fn m0(&self) -> Mode {
        self.m0
    }
    pub fn m1(&self) -> Mode {
        self.m1
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Same `(m0, m1, δ)` subspace.
    pub fn same_subspace(&self, other: &QubitSpec) -> bool {
        self.m0 == other.m0 && self.m1 == other.m1 && self.delta == other.delta
    }

    pub fn to_state(&self) -> GeneralState {
        qubit_to_state(self)
    }

    /// Reads `(α, β)` back from a state supported on `{m0, m1}`; the global
    /// phase is fixed by making the `m0` coefficient real non-negative.
    pub fn from_state(state: &GeneralState, m0: Mode, m1: Mode) -> Result<Self> {
        if state.modes().any(|m| m != m0 && m != m1) {
            return Err(WignerError::SubspaceMismatch);
        }
        state.check_normalized()?;
        let (c0, c1) = (state.coefficient(m0), state.coefficient(m1));
        let beta = c1.norm().atan2(c0.norm());
        let alpha = if c0.norm() > 0.0 && c1.norm() > 0.0 { c1.arg() - c0.arg() } else { 0.0 };
        Self::new(m0, m1, alpha, beta)?.with_delta(state.delta())
    }
}

pub fn qubit_to_state(spec: &QubitSpec) -> GeneralState {
    let c0 = Complex64::new(spec.beta.cos(), 0.0);
    let c1 = Complex64::from_polar(spec.beta.sin(), spec.alpha);
    let coefficients = [(spec.m0, c0), (spec.m1, c1)].into_iter().filter(|(_, c)| *c != Complex64::default());
    GeneralState::from_raw_parts(coefficients, spec.delta).expect("qubit spec yields a valid support")
}

/// `(e_{m_0} + … + e_{m_{d-1}})/√d`.
pub fn uniform_qudit(modes: &[Mode], delta: f64) -> Result<GeneralState> {
    if modes.is_empty() {
        return Err(WignerError::EmptySupport);
    }
    let c = Complex64::new(1.0 / (modes.len() as f64).sqrt(), 0.0);
    GeneralState::new(modes.iter().map(|&m| (m, c)), delta)
}

/// The four mode indices of a 2-qubit subspace `Q⁴_{m0m1,n0n1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoQubitModes {
    pub m0: Mode,
    pub m1: Mode,
    pub n0: Mode,
    pub n1: Mode,
}

impl TwoQubitModes {
    pub fn new(m0: Mode, m1: Mode, n0: Mode, n1: Mode) -> Result<Self> {
        if m0 == m1 || n0 == n1 {
            return Err(WignerError::DegenerateModes);
        }
        Ok(Self { m0, m1, n0, n1 })
    }

    /// `n0 = m0`, `m1 = n1 = −m0`, as used for the EPR/Bell basis.
    pub fn antipodal(m0: Mode) -> Result<Self> {
        if m0 == 0 {
            return Err(WignerError::ZeroMode);
        }
        Self::new(m0, -m0, m0, -m0)
    }

    pub(crate) fn m_gap(&self) -> f64 {
        (self.m1 - self.m0) as f64
    }

    pub(crate) fn n_gap(&self) -> f64 {
        (self.n1 - self.n0) as f64
    }
}

/// General 2-qubit element
/// `b00 e_{m0n0} + e^{iα10} b10 e_{m1n0} + e^{iα01} b01 e_{m0n1} + e^{iα11} b11 e_{m1n1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitSpec {
    modes: TwoQubitModes,
    /// `[b00, b10, b01, b11]`
    amplitudes: [f64; 4],
    alpha10: f64,
    alpha01: f64,
    alpha11: f64,
    delta1: f64,
    delta2: f64,
}

impl TwoQubitSpec {
    /// Amplitudes in the order `[b00, b10, b01, b11]`, phases `[α10, α01, α11]`.
    pub fn from_amplitudes(modes: TwoQubitModes, amplitudes: [f64; 4], phases: [f64; 3]) -> Result<Self> {
        for (i, b) in amplitudes.iter().enumerate() {
            check_finite(&format!("b[{i}]"), *b)?;
        }
        let norm: f64 = amplitudes.iter().map(|b| b * b).sum();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(WignerError::NonNormalizedState { norm });
        }
        let [alpha10, alpha01, alpha11] = phases;
        Ok(Self {
            modes,
            amplitudes,
            alpha10: wrap_phase(check_finite("alpha10", alpha10)?),
            alpha01: wrap_phase(check_finite("alpha01", alpha01)?),
            alpha11: wrap_phase(check_finite("alpha11", alpha11)?),
            delta1: 0.0,
            delta2: 0.0,
        })
    }

    /// Hyperspherical parametrization: `b00 = cos β`, `b10 = sin β cos γ`,
    /// `b01 = sin β sin γ cos φ`, `b11 = sin β sin γ sin φ`.
    pub fn from_angles(modes: TwoQubitModes, beta: f64, gamma: f64, phi: f64, phases: [f64; 3]) -> Result<Self> {
        for (name, x) in [("beta", beta), ("gamma", gamma)] {
            if !check_finite(name, x).map(|x| (0.0..PI).contains(&x))? {
                return Err(WignerError::InvalidParameter(format!("{name} = {x} outside [0, π)")));
            }
        }
        let phi = wrap_phase(check_finite("phi", phi)?);
        let (sb, cb) = beta.sin_cos();
        let (sg, cg) = gamma.sin_cos();
        let (sp, cp) = phi.sin_cos();
        let amplitudes = [cb, sb * cg, sb * sg * cp, sb * sg * sp];
        Self::from_amplitudes(modes, amplitudes, phases)
    }

    pub fn with_deltas(self, delta1: f64, delta2: f64) -> Result<Self> {
        Ok(Self { delta1: check_delta(delta1)?, delta2: check_delta(delta2)?, ..self })
    }

    pub fn modes(&self) -> TwoQubitModes {
        self.modes
    }
    /// `[b00, b10, b01, b11]`
    pub fn amplitudes(&self) -> [f64; 4] {
        self.amplitudes
    }
    /// `[α10, α01, α11]`
    pub fn phases(&self) -> [f64; 3] {
        [self.alpha10, self.alpha01, self.alpha11]
    }
    pub fn deltas(&self) -> (f64, f64) {
        (self.delta1, self.delta2)
    }

    pub fn to_state(&self) -> TwoModeState {
        two_qubit_to_state(self)
    }
}

pub fn two_qubit_to_state(spec: &TwoQubitSpec) -> TwoModeState {
    let TwoQubitModes { m0, m1, n0, n1 } = spec.modes;
    let [b00, b10, b01, b11] = spec.amplitudes;
    let coefficients = [
        ((m0, n0), Complex64::new(b00, 0.0)),
        ((m1, n0), Complex64::from_polar(b10, spec.alpha10)),
        ((m0, n1), Complex64::from_polar(b01, spec.alpha01)),
        ((m1, n1), Complex64::from_polar(b11, spec.alpha11)),
    ]
    .into_iter()
    .filter(|(_, c)| *c != Complex64::default());
    TwoModeState::from_raw_parts(coefficients, spec.delta1, spec.delta2).expect("2-qubit spec yields a valid support")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellKind {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellKind {
    pub const ALL: [BellKind; 4] = [BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus, BellKind::PsiMinus];

    pub(crate) fn sign(self) -> f64 {
        match self {
            BellKind::PhiPlus | BellKind::PsiPlus => 1.0,
            BellKind::PhiMinus | BellKind::PsiMinus => -1.0,
        }
    }

    pub(crate) fn is_phi(self) -> bool {
        matches!(self, BellKind::PhiPlus | BellKind::PhiMinus)
    }
}

impl fmt::Display for BellKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BellKind::PhiPlus => "phi+",
            BellKind::PhiMinus => "phi-",
            BellKind::PsiPlus => "psi+",
            BellKind::PsiMinus => "psi-",
        })
    }
}

impl FromStr for BellKind {
    type Err = WignerError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_lowercase().as_str() {
            "phi+" | "φ+" | "phiplus" => Ok(BellKind::PhiPlus),
            "phi-" | "φ-" | "phiminus" => Ok(BellKind::PhiMinus),
            "psi+" | "ψ+" | "psiplus" => Ok(BellKind::PsiPlus),
            "psi-" | "ψ-" | "psiminus" => Ok(BellKind::PsiMinus),
            other => Err(WignerError::StateParse(format!("unknown Bell state `{other}`"))),
        }
    }
}

/// Φ± = (e_{m0}e_{m0} ± e_{−m0}e_{−m0})/√2, Ψ± = (e_{m0}e_{−m0} ± e_{−m0}e_{m0})/√2.
pub fn bell_state(kind: BellKind, m0: Mode) -> Result<TwoModeState> {
    if m0 == 0 {
        return Err(WignerError::ZeroMode);
    }
    let first = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let second = first * kind.sign();
    let (a, b) = if kind.is_phi() { ((m0, m0), (-m0, -m0)) } else { ((m0, -m0), (-m0, m0)) };
    TwoModeState::new([(a, first), (b, second)], 0.0, 0.0)
}

/// Something with a total OAM expectation value.
pub trait AngularMomentum {
    fn expectation_l(&self) -> f64;
}

impl AngularMomentum for GeneralState {
    fn expectation_l(&self) -> f64 {
        GeneralState::expectation_l(self)
    }
}

impl AngularMomentum for TwoModeState {
    fn expectation_l(&self) -> f64 {
        TwoModeState::expectation_l(self)
    }
}

pub fn expectation_l<S: AngularMomentum + ?Sized>(state: &S) -> f64 {
    state.expectation_l()
}

/// `ρ = (I + a·σ)/2` on the subspace spanned by `e_{m0,δ}, e_{m1,δ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochDensity {
    m0: Mode,
    m1: Mode,
    a: [f64; 3],
    delta: f64,
}

/// Slack on `|a| ≤ 1`.
pub const BLOCH_TOLERANCE: f64 = 1e-12;

impl BlochDensity {
    pub fn new(m0: Mode, m1: Mode, a: [f64; 3]) -> Result<Self> {
        if m0 == m1 {
            return Err(WignerError::DegenerateModes);
        }
        let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !norm.is_finite() || norm > 1.0 + BLOCH_TOLERANCE {
            return Err(WignerError::InvalidBlochVector { norm });
        }
        Ok(Self { m0, m1, a, delta: 0.0 })
    }

    pub fn maximally_mixed(m0: Mode, m1: Mode) -> Result<Self> {
        Self::new(m0, m1, [0.0; 3])
    }

    pub fn with_delta(self, delta: f64) -> Result<Self> {
        Ok(Self { delta: check_delta(delta)?, ..self })
    }

    pub fn m0(&self) -> Mode {
        self.m0
    }
    pub fn m1(&self) -> Mode {
        self.m1
    }
    pub fn bloch_vector(&self) -> [f64; 3] {
        self.a
    }
    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn radius(&self) -> f64 {
        self.a.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn is_pure(&self) -> bool {
        (self.radius() - 1.0).abs() <= BLOCH_TOLERANCE
    }

    pub fn same_subspace(&self, other: &BlochDensity) -> bool {
        self.m0 == other.m0 && self.m1 == other.m1 && self.delta == other.delta
    }

    /// Matrix elements `ρ_{jk}` in the basis `(e_{m0}, e_{m1})`.
    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        let [a1, a2, a3] = self.a;
        [
            [Complex64::new((1.0 + a3) / 2.0, 0.0), Complex64::new(a1 / 2.0, -a2 / 2.0)],
            [Complex64::new(a1 / 2.0, a2 / 2.0), Complex64::new((1.0 - a3) / 2.0, 0.0)],
        ]
    }

    /// Spectral decomposition into at most two weighted pure qubits.
    pub fn pure_components(&self) -> Vec<(f64, QubitSpec)> {
        let r = self.radius();
        let polar = |n: [f64; 3]| {
            let beta = n[2].clamp(-1.0, 1.0).acos() / 2.0;
            let alpha = n[1].atan2(n[0]);
            QubitSpec::new(self.m0, self.m1, alpha, beta)
                .and_then(|q| q.with_delta(self.delta))
                .expect("unit Bloch vector maps to a valid qubit")
        };
        let up = if r > 0.0 { [self.a[0] / r, self.a[1] / r, self.a[2] / r] } else { [0.0, 0.0, 1.0] };
        let down = [-up[0], -up[1], -up[2]];
        if self.is_pure() {
            return vec![(1.0, polar(up))];
        }
        vec![((1.0 + r) / 2.0, polar(up)), ((1.0 - r) / 2.0, polar(down))]
    }
}

/// Bloch vector of a pure qubit: `(sin 2β cos α, sin 2β sin α, cos 2β)`.
pub fn density_from_qubit(spec: &QubitSpec) -> BlochDensity {
    let (s2b, c2b) = (2.0 * spec.beta).sin_cos();
    let a = [s2b * spec.alpha.cos(), s2b * spec.alpha.sin(), c2b];
    BlochDensity { m0: spec.m0, m1: spec.m1, a, delta: spec.delta }
}

/// `b = n_b + δ` with `n_b` an integer and `δ ∈ [0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindingDecomposition {
    pub n_b: i64,
    pub delta: f64,
}

impl WindingDecomposition {
    pub fn recompose(&self) -> f64 {
        self.n_b as f64 + self.delta
    }
}

pub fn decompose_winding(b: f64) -> WindingDecomposition {
    assert!(b.is_finite(), "winding number must be finite");
    let floor = b.floor();
    let delta = b - floor;
    // b slightly below an integer can round delta up to 1.0
    if delta >= 1.0 {
        WindingDecomposition { n_b: floor as i64 + 1, delta: 0.0 }
    } else {
        WindingDecomposition { n_b: floor as i64, delta }
    }
}
