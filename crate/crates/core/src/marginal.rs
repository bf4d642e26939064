//! Marginal distributions, Whittaker cardinal momentum profiles, OAM
//! probabilities and overlaps, each both in closed form and by phase-space
//! integration.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::closed_form::qubit_terms;
use crate::error::{Result, WignerError};
use crate::kernel::{bilinear_sum_1d, bilinear_sum_2d, sinc_pi, PhasePoint, PhasePoint4};
use crate::quadrature::{periodic_trapezoid, trapezoid_nodes, Truncation};
use crate::state::{BlochDensity, GeneralState, Mode, QubitSpec, TwoModeState};

/// Tolerance used when a [`WhittakerProfile`] checks its weights.
pub const WEIGHT_TOLERANCE: f64 = 1e-12;

/// `|ψ(θ)|²/2π`.
pub fn marginal_angle(state: &GeneralState, theta: f64) -> f64 {
    state.wave_function(theta).norm_sqr() / TAU
}

/// `|ψ(θ₁, θ₂)|²/(2π)²`.
pub fn marginal_angle_2d(state: &TwoModeState, theta1: f64, theta2: f64) -> f64 {
    state.wave_function(theta1, theta2).norm_sqr() / (TAU * TAU)
}

/// `Σ |c_m|² sinc π(p − m − δ)`.
pub fn marginal_momentum(state: &GeneralState, p: f64) -> f64 {
    WhittakerProfile::from_state(state).eval(p)
}

pub fn marginal_momentum_2d(state: &TwoModeState, p1: f64, p2: f64) -> f64 {
    WhittakerProfile2::from_state(state).eval(p1, p2)
}

fn check_weights<I: Iterator<Item = f64>>(weights: I) -> Result<()> {
    let mut total = 0.0;
    for w in weights {
        if !(w.is_finite() && w >= 0.0) {
            return Err(WignerError::InvalidParameter(format!("weight {w} is negative or not finite")));
        }
        total += w;
    }
    if (total - 1.0).abs() > WEIGHT_TOLERANCE {
        return Err(WignerError::InvalidParameter(format!("weights sum to {total}, not 1")));
    }
    Ok(())
}

/// Weighted sum of shifted sincs, the momentum marginal of a one-mode state.
#[derive(Debug, Clone, PartialEq)]
pub struct WhittakerProfile {
    terms: BTreeMap<Mode, f64>,
    delta: f64,
}

impl WhittakerProfile {
    pub fn new(terms: impl IntoIterator<Item = (Mode, f64)>, delta: f64) -> Result<Self> {
        let terms: BTreeMap<Mode, f64> = terms.into_iter().collect();
        check_weights(terms.values().copied())?;
        Ok(Self { terms, delta: crate::state::check_delta(delta)? })
    }

    pub fn from_state(state: &GeneralState) -> Self {
        Self { terms: oam_probabilities(state), delta: state.delta() }
    }

    pub fn terms(&self) -> &BTreeMap<Mode, f64> {
        &self.terms
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn eval(&self, p: f64) -> f64 {
        self.terms.iter().map(|(&m, &w)| w * sinc_pi(p - m as f64 - self.delta)).sum()
    }

    /// Quadrature recovery of the weights on `modes`.
    pub fn extract(&self, modes: &[Mode], truncation: &Truncation, tolerance: f64) -> Result<BTreeMap<Mode, f64>> {
        extract_oam_probabilities(|p| self.eval(p), self.delta, modes, truncation, tolerance)
    }
}

/// Two-mode momentum marginal `Σ w_{mn} sinc π(p₁−m−δ₁) sinc π(p₂−n−δ₂)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WhittakerProfile2 {
    terms: BTreeMap<(Mode, Mode), f64>,
    delta1: f64,
    delta2: f64,
}

impl WhittakerProfile2 {
    pub fn new(terms: impl IntoIterator<Item = ((Mode, Mode), f64)>, delta1: f64, delta2: f64) -> Result<Self> {
        let terms: BTreeMap<(Mode, Mode), f64> = terms.into_iter().collect();
        check_weights(terms.values().copied())?;
        Ok(Self { terms, delta1: crate::state::check_delta(delta1)?, delta2: crate::state::check_delta(delta2)? })
    }

    pub fn from_state(state: &TwoModeState) -> Self {
        let (delta1, delta2) = state.deltas();
        Self { terms: oam_probabilities_2d(state), delta1, delta2 }
    }

    pub fn terms(&self) -> &BTreeMap<(Mode, Mode), f64> {
        &self.terms
    }

    pub fn eval(&self, p1: f64, p2: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(m, n), &w)| w * sinc_pi(p1 - m as f64 - self.delta1) * sinc_pi(p2 - n as f64 - self.delta2))
            .sum()
    }

    /// Per-pair recovery `∫∫ ω(p₁,p₂) sinc π(p₁−m−δ₁) sinc π(p₂−n−δ₂)`.
    ///
    /// The profile is a sum of separable terms, so each double integral is
    /// assembled from one-dimensional truncated integrals
    /// `∫ sinc π(p−k−δ) sinc π(p−m−δ) dp`, one per pair of mode indices.
    pub fn extract(
        &self,
        pairs: &[(Mode, Mode)],
        truncation: &Truncation,
        tolerance: f64,
    ) -> Result<BTreeMap<(Mode, Mode), f64>> {
        truncation.validate()?;
        let mut first = OverlapCache::new(self.delta1, *truncation, tolerance);
        let mut second = OverlapCache::new(self.delta2, *truncation, tolerance);
        let mut out = BTreeMap::new();
        for &(m, n) in pairs {
            let mut acc = 0.0;
            for (&(k, l), &w) in &self.terms {
                acc += w * first.get(k, m)? * second.get(l, n)?;
            }
            out.insert((m, n), acc);
        }
        Ok(out)
    }
}

/// Memoized `∫ sinc π(p−a−δ) sinc π(p−b−δ) dp`.
struct OverlapCache {
    delta: f64,
    truncation: Truncation,
    tolerance: f64,
    values: BTreeMap<(Mode, Mode), f64>,
}

impl OverlapCache {
    fn new(delta: f64, truncation: Truncation, tolerance: f64) -> Self {
        Self { delta, truncation, tolerance, values: BTreeMap::new() }
    }

    fn get(&mut self, a: Mode, b: Mode) -> Result<f64> {
        let key = (a.min(b), a.max(b));
        if let Some(&v) = self.values.get(&key) {
            return Ok(v);
        }
        let (ca, cb) = (a as f64 + self.delta, b as f64 + self.delta);
        let v = self.truncation.integrate_decaying_checked(|p| sinc_pi(p - ca) * sinc_pi(p - cb), self.tolerance)?;
        self.values.insert(key, v);
        Ok(v)
    }
}

/// `|c_m|²` read directly from the coefficients.
pub fn oam_probabilities(state: &GeneralState) -> BTreeMap<Mode, f64> {
    state.coefficients().iter().map(|&(m, c)| (m, c.norm_sqr())).collect()
}

pub fn oam_probabilities_2d(state: &TwoModeState) -> BTreeMap<(Mode, Mode), f64> {
    state.coefficients().iter().map(|&(mn, c)| (mn, c.norm_sqr())).collect()
}

/// `∫ ω(p) sinc π(p − m − δ) dp` for each requested mode, by truncated
/// quadrature. Fails if the outer half of the truncation window contributes
/// more than `tolerance`.
pub fn extract_oam_probabilities<F>(
    profile: F,
    delta: f64,
    modes: &[Mode],
    truncation: &Truncation,
    tolerance: f64,
) -> Result<BTreeMap<Mode, f64>>
where
    F: Fn(f64) -> f64 + Sync,
{
    truncation.validate()?;
    modes
        .iter()
        .map(|&m| {
            let centre = m as f64 + delta;
            let v = truncation.integrate_decaying_checked(|p| profile(p) * sinc_pi(p - centre), tolerance)?;
            Ok((m, v))
        })
        .collect()
}

/// `cos²β cos²β̂ + sin²β sin²β̂ + ½ sin 2β sin 2β̂ cos(α − α̂)`.
pub fn transition_probability_direct(a: &QubitSpec, b: &QubitSpec) -> Result<f64> {
    if !a.same_subspace(b) {
        return Err(WignerError::SubspaceMismatch);
    }
    let (sa, ca) = a.beta().sin_cos();
    let (sb, cb) = b.beta().sin_cos();
    Ok(ca * ca * cb * cb
        + sa * sa * sb * sb
        + 0.5 * (2.0 * a.beta()).sin() * (2.0 * b.beta()).sin() * (a.alpha() - b.alpha()).cos())
}

/// `tr(ρ₁ρ₂) = ½(1 + a₁·a₂)`.
pub fn density_overlap(a: &BlochDensity, b: &BlochDensity) -> Result<f64> {
    if !a.same_subspace(b) {
        return Err(WignerError::SubspaceMismatch);
    }
    let (x, y) = (a.bloch_vector(), b.bloch_vector());
    Ok(0.5 * (1.0 + x[0] * y[0] + x[1] * y[1] + x[2] * y[2]))
}

/// θ-dependence of a qubit-subspace Wigner function at fixed `p`:
/// `V(θ) = constant + cos·cos(kθ) + sin·sin(kθ)`, `k = m0 − m1`.
#[derive(Debug, Clone, Copy)]
struct AngularSlice {
    constant: f64,
    cos: f64,
    sin: f64,
}

/// `2π ∫dp ∫dθ V₁ V₂` for two Wigner functions on the same qubit subspace,
/// θ by the periodic trapezoid rule and p by plain truncation (the product
/// decays like `1/p²`).
fn qubit_subspace_overlap<F, G>(k: f64, f: F, g: G, truncation: &Truncation, theta_nodes: usize) -> Result<f64>
where
    F: Fn(f64) -> AngularSlice + Sync,
    G: Fn(f64) -> AngularSlice + Sync,
{
    truncation.validate()?;
    if theta_nodes == 0 {
        return Err(WignerError::InvalidParameter("need at least one angle node".into()));
    }
    let table: Vec<(f64, f64)> = trapezoid_nodes(theta_nodes)
        .map(|t| {
            let (s, c) = (k * t).sin_cos();
            (c, s)
        })
        .collect();
    let h = TAU / theta_nodes as f64;
    let integrand = |p: f64| {
        let (a, b) = (f(p), g(p));
        let mut acc = 0.0;
        for &(c, s) in &table {
            acc += (a.constant + a.cos * c + a.sin * s) * (b.constant + b.cos * c + b.sin * s);
        }
        acc * h
    };
    Ok(TAU * truncation.integrate_decaying(integrand))
}

fn qubit_slice(spec: &QubitSpec, p: f64) -> AngularSlice {
    let centre = (spec.m0() as f64 + spec.m1() as f64 + 2.0 * spec.delta()) / 2.0;
    let amplitude = (2.0 * spec.beta()).sin() * sinc_pi(p - centre) / TAU;
    AngularSlice {
        constant: qubit_terms(spec, PhasePoint { theta: 0.0, p }).diagonal,
        cos: amplitude * spec.alpha().cos(),
        sin: amplitude * spec.alpha().sin(),
    }
}

/// Phase-space form of the transition probability, `2π ∫dp ∫dθ V₁ V₂`.
pub fn transition_probability_phase_space(
    a: &QubitSpec,
    b: &QubitSpec,
    truncation: &Truncation,
    theta_nodes: usize,
) -> Result<f64> {
    if !a.same_subspace(b) {
        return Err(WignerError::SubspaceMismatch);
    }
    let k = (a.m0() - a.m1()) as f64;
    qubit_subspace_overlap(k, |p| qubit_slice(a, p), |p| qubit_slice(b, p), truncation, theta_nodes)
}

fn density_slice(rho: &BlochDensity, p: f64) -> AngularSlice {
    let (m0, m1, delta) = (rho.m0() as f64, rho.m1() as f64, rho.delta());
    let [a1, a2, a3] = rho.bloch_vector();
    let s = sinc_pi(p - (m0 + m1 + 2.0 * delta) / 2.0) / TAU;
    AngularSlice {
        constant: ((1.0 + a3) / 2.0 * sinc_pi(p - m0 - delta) + (1.0 - a3) / 2.0 * sinc_pi(p - m1 - delta)) / TAU,
        cos: a1 * s,
        sin: a2 * s,
    }
}

/// Phase-space form of `tr(ρ₁ρ₂)`.
pub fn density_overlap_phase_space(
    a: &BlochDensity,
    b: &BlochDensity,
    truncation: &Truncation,
    theta_nodes: usize,
) -> Result<f64> {
    if !a.same_subspace(b) {
        return Err(WignerError::SubspaceMismatch);
    }
    let k = (a.m0() - a.m1()) as f64;
    qubit_subspace_overlap(k, |p| density_slice(a, p), |p| density_slice(b, p), truncation, theta_nodes)
}

/// `∫ V(θ, p) dp` from the kernel double sum, with endpoint averaging for the
/// conditionally convergent single-sinc tails.
pub fn p_integrated_wigner(state: &GeneralState, theta: f64, truncation: &Truncation) -> Result<f64> {
    truncation.validate()?;
    state.check_normalized()?;
    let theta = crate::kernel::reduce_angle(theta);
    Ok(truncation.integrate_oscillatory(|p| bilinear_sum_1d(state, PhasePoint { theta, p }).re))
}

/// `∫∫ V dp₁ dp₂` of a two-mode state. The kernel is a product of one-mode
/// kernels, so the double integral is a sum of products of single-sinc
/// integrals, each computed by endpoint-averaged truncation.
pub fn p_integrated_wigner_2d(state: &TwoModeState, theta1: f64, theta2: f64, truncation: &Truncation) -> Result<f64> {
    truncation.validate()?;
    state.check_normalized()?;
    let (d1, d2) = state.deltas();
    let mut cache: BTreeMap<u64, f64> = BTreeMap::new();
    let mut sinc_integral = |centre: f64| {
        *cache.entry(centre.to_bits()).or_insert_with(|| truncation.integrate_oscillatory(|p| sinc_pi(p - centre)))
    };
    let coeffs = state.coefficients();
    let mut acc = Complex64::default();
    for &((m, n), cmn) in coeffs {
        for &((k, l), ckl) in coeffs {
            let c1 = (m + k) as f64 / 2.0 + d1;
            let c2 = (n + l) as f64 / 2.0 + d2;
            let phase = Complex64::cis((k - m) as f64 * theta1 + (l - n) as f64 * theta2);
            acc += cmn.conj() * ckl * phase * sinc_integral(c1) * sinc_integral(c2);
        }
    }
    Ok(acc.re / (TAU * TAU))
}

fn mode_gap<I: Iterator<Item = Mode>>(modes: I) -> usize {
    let (lo, hi) = modes.fold((Mode::MAX, Mode::MIN), |(lo, hi), m| (lo.min(m), hi.max(m)));
    (hi - lo).unsigned_abs() as usize
}

/// `∫ V(θ, p) dθ` by the trapezoid rule on `2·gap + 1` nodes, exact for the
/// trigonometric polynomial in θ.
pub fn theta_integrated_wigner(state: &GeneralState, p: f64) -> f64 {
    let nodes = 2 * mode_gap(state.modes()) + 1;
    periodic_trapezoid(|theta| bilinear_sum_1d(state, PhasePoint { theta, p }).re, nodes)
}

pub fn theta_integrated_wigner_2d(state: &TwoModeState, p1: f64, p2: f64) -> f64 {
    let n1 = 2 * mode_gap(state.coefficients().iter().map(|&((m, _), _)| m)) + 1;
    let n2 = 2 * mode_gap(state.coefficients().iter().map(|&((_, n), _)| n)) + 1;
    periodic_trapezoid(
        |theta1| periodic_trapezoid(|theta2| bilinear_sum_2d(state, PhasePoint4 { theta1, theta2, p1, p2 }).re, n2),
        n1,
    )
}

/// `∫∫ V dθ dp`: the θ-integral is done exactly, the remaining single-sinc
/// p-integral by endpoint-averaged truncation.
pub fn normalization_integral(state: &GeneralState, truncation: &Truncation) -> Result<f64> {
    truncation.validate()?;
    Ok(truncation.integrate_oscillatory(|p| theta_integrated_wigner(state, p)))
}

/// Four-dimensional normalization integral through the marginal factor
/// structure `Σ |c_mn|² ∫sinc π(p₁−m−δ₁) ∫sinc π(p₂−n−δ₂)`.
pub fn normalization_integral_2d(state: &TwoModeState, truncation: &Truncation) -> Result<f64> {
    truncation.validate()?;
    let (d1, d2) = state.deltas();
    let single = |centre: f64| truncation.integrate_oscillatory(|p| sinc_pi(p - centre));
    Ok(state
        .coefficients()
        .iter()
        .map(|&((m, n), c)| c.norm_sqr() * single(m as f64 + d1) * single(n as f64 + d2))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{bell_state, density_from_qubit, BellKind};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};

    fn tilted() -> QubitSpec {
        QubitSpec::new(1, 0, 0.0, FRAC_PI_3).unwrap()
    }

    #[test]
    fn angle_marginal_of_qubit() {
        let spec = QubitSpec::new(2, -1, 0.8, 0.5).unwrap();
        let s = spec.to_state();
        for k in 0..16 {
            let t = -PI + k as f64 * 0.4;
            let expected = (1.0 + (1.0f64).sin() * (3.0 * t - 0.8).cos()) / TAU;
            assert!((marginal_angle(&s, t) - expected).abs() < 1e-14);
        }
        let e = GeneralState::basis(5, 0.3).unwrap();
        assert!((marginal_angle(&e, 1.1) - 1.0 / TAU).abs() < 1e-15);
    }

    #[test]
    fn momentum_marginal_interpolates() {
        let s = tilted().to_state();
        assert!((marginal_momentum(&s, 1.0) - 0.25).abs() < 1e-15);
        assert!((marginal_momentum(&s, 0.0) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn theta_integration_is_exact() {
        let s = QubitSpec::new(3, -2, 1.1, 0.7).unwrap().with_delta(0.4).unwrap().to_state();
        for p in [-2.3, 0.0, 0.45, 3.7] {
            assert!((theta_integrated_wigner(&s, p) - marginal_momentum(&s, p)).abs() < 1e-12);
        }
        let b = bell_state(BellKind::PsiMinus, 2).unwrap();
        for (p1, p2) in [(0.1, -0.3), (2.0, -2.0)] {
            assert!((theta_integrated_wigner_2d(&b, p1, p2) - marginal_momentum_2d(&b, p1, p2)).abs() < 1e-12);
        }
    }

    #[test]
    fn extraction_of_tilted_qubit_weights() {
        let profile = WhittakerProfile::from_state(&tilted().to_state());
        let got = profile.extract(&[0, 1], &Truncation::default(), 1e-3).unwrap();
        assert!((got[&1] - 0.25).abs() < 1e-3);
        assert!((got[&0] - 0.75).abs() < 1e-3);
    }

    #[test]
    fn extraction_of_bell_weights() {
        let profile = WhittakerProfile2::from_state(&bell_state(BellKind::PhiPlus, 1).unwrap());
        let got = profile.extract(&[(1, 1), (-1, -1), (1, -1)], &Truncation::default(), 1e-3).unwrap();
        assert!((got[&(1, 1)] - 0.5).abs() < 1e-3);
        assert!((got[&(-1, -1)] - 0.5).abs() < 1e-3);
        assert!(got[&(1, -1)].abs() < 1e-3);
    }

    #[test]
    fn profile_weights_are_validated() {
        assert!(WhittakerProfile::new([(0, 0.5), (1, 0.4)], 0.0).is_err());
        assert!(WhittakerProfile::new([(0, 1.5), (1, -0.5)], 0.0).is_err());
        assert!(WhittakerProfile::new([(0, 0.5), (1, 0.5)], 0.0).is_ok());
    }

    #[test]
    fn direct_transition_examples() {
        let a = QubitSpec::new(1, -1, 0.3, 0.9).unwrap();
        let b = QubitSpec::new(1, -1, 0.3, 0.2).unwrap();
        assert!((transition_probability_direct(&a, &b).unwrap() - (0.7f64).cos().powi(2)).abs() < 1e-15);
        assert!((transition_probability_direct(&a, &a).unwrap() - 1.0).abs() < 1e-15);
        let up = QubitSpec::new(1, -1, 0.0, 0.0).unwrap();
        let down = QubitSpec::new(1, -1, 0.0, FRAC_PI_2).unwrap();
        assert!(transition_probability_direct(&up, &down).unwrap().abs() < 1e-15);
        let other = QubitSpec::new(2, -1, 0.0, 0.0).unwrap();
        assert_eq!(transition_probability_direct(&up, &other), Err(WignerError::SubspaceMismatch));
    }

    #[test]
    fn phase_space_transition_examples() {
        let t = Truncation::default();
        let a = QubitSpec::new(1, -1, 0.0, FRAC_PI_4).unwrap();
        let b = QubitSpec::new(1, -1, PI, FRAC_PI_4).unwrap();
        assert!((transition_probability_phase_space(&a, &a, &t, 512).unwrap() - 1.0).abs() < 1e-3);
        assert!(transition_probability_phase_space(&a, &b, &t, 512).unwrap().abs() < 1e-3);
    }

    #[test]
    fn density_overlaps() {
        let q = QubitSpec::new(2, 0, 0.4, 0.3).unwrap();
        let rho = density_from_qubit(&q);
        assert!((density_overlap(&rho, &rho).unwrap() - 1.0).abs() < 1e-15);
        let mixed = BlochDensity::maximally_mixed(2, 0).unwrap();
        assert_eq!(density_overlap(&mixed, &mixed).unwrap(), 0.5);
        let a = rho.bloch_vector();
        let flipped = BlochDensity::new(2, 0, [-a[0], -a[1], -a[2]]).unwrap();
        assert!(density_overlap(&rho, &flipped).unwrap().abs() < 1e-15);
        let ps = density_overlap_phase_space(&rho, &mixed, &Truncation::default(), 64).unwrap();
        assert!((ps - 0.5).abs() < 1e-3);
    }

    #[test]
    fn p_integration_matches_angle_marginal() {
        let s = QubitSpec::new(1, -1, 0.0, FRAC_PI_4).unwrap().to_state();
        let t = Truncation::default();
        for theta in [-3.0, -0.4, 0.0, 1.3] {
            let v = p_integrated_wigner(&s, theta, &t).unwrap();
            assert!((v - marginal_angle(&s, theta)).abs() < 1e-3);
        }
        let b = bell_state(BellKind::PhiMinus, 1).unwrap();
        let v = p_integrated_wigner_2d(&b, 0.3, -0.5, &t).unwrap();
        assert!((v - marginal_angle_2d(&b, 0.3, -0.5)).abs() < 1e-3);
    }

    #[test]
    fn normalization() {
        let t = Truncation::default();
        let s = QubitSpec::new(1, -1, 0.0, FRAC_PI_4).unwrap().to_state();
        assert!((normalization_integral(&s, &t).unwrap() - 1.0).abs() < 1e-3);
        let b = bell_state(BellKind::PsiPlus, 3).unwrap();
        assert!((normalization_integral_2d(&b, &t).unwrap() - 1.0).abs() < 1e-3);
    }
}
