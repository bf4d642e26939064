//! Direct quadrature of the defining ϑ-integral of the Wigner function,
//! independent of the kernel and of every closed form, plus a numerical check
//! of the sinc integral identities the marginal formulas rely on.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Result, WignerError};
use crate::kernel::{sinc_pi, PhasePoint, PhasePoint4};
use crate::quadrature::{composite_nodes, GaussLegendre, Truncation};
use crate::state::{GeneralState, Mode, TwoModeState};

/// Gauss panels per axis over `ϑ ∈ [−π, π]`.
pub const ORACLE_PANELS: usize = 8;
/// Default node budget per axis.
pub const DEFAULT_ORACLE_NODES: usize = 512;
/// Largest allowed change between the `n/2`- and `n`-node results.
pub const ORACLE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleValue {
    pub value: f64,
    /// Magnitude of the imaginary part of the integral.
    pub imag_residue: f64,
    /// `|I_n − I_{n/2}|`.
    pub error_estimate: f64,
}

fn check_nodes(nodes: usize, spread: usize) -> Result<usize> {
    let needed = 4 * spread + 16;
    if nodes < needed || nodes % (2 * ORACLE_PANELS) != 0 {
        return Err(WignerError::InvalidParameter(format!(
            "oracle needs a multiple of {} nodes and at least {needed}, got {nodes}",
            2 * ORACLE_PANELS
        )));
    }
    Ok(nodes / ORACLE_PANELS)
}

fn spread<I: Iterator<Item = Mode>>(modes: I) -> usize {
    let (lo, hi) = modes.fold((Mode::MAX, Mode::MIN), |(lo, hi), m| (lo.min(m), hi.max(m)));
    (hi - lo).unsigned_abs() as usize
}

fn offsets(order: usize) -> Vec<(f64, f64)> {
    composite_nodes(&GaussLegendre::new(order), -PI, PI, ORACLE_PANELS)
}

fn single_1d(state: &GeneralState, point: PhasePoint, order: usize) -> Complex64 {
    let sum: Complex64 = offsets(order)
        .iter()
        .map(|&(t, w)| {
            let minus = state.wave_function(point.theta - t / 2.0);
            let plus = state.wave_function(point.theta + t / 2.0);
            w * Complex64::cis(-point.p * t) * minus.conj() * plus
        })
        .sum();
    sum / (TAU * TAU)
}

fn finish(fine: Complex64, coarse: Complex64) -> Result<OracleValue> {
    let error_estimate = (fine.re - coarse.re).abs();
    if error_estimate > ORACLE_TOLERANCE {
        return Err(WignerError::QuadratureNotConverged { change: error_estimate, tolerance: ORACLE_TOLERANCE });
    }
    Ok(OracleValue { value: fine.re, imag_residue: fine.im.abs(), error_estimate })
}

/// `(1/2π) ∫ dϑ/2π e^{−ipϑ} ψ*(θ − ϑ/2) ψ(θ + ϑ/2)` on `nodes` Gauss points.
pub fn oracle_wigner_1d(state: &GeneralState, point: PhasePoint, nodes: usize) -> Result<OracleValue> {
    state.check_normalized()?;
    let order = check_nodes(nodes, spread(state.modes()))?;
    finish(single_1d(state, point, order), single_1d(state, point, order / 2))
}

/// Per-axis table of `e^{i(m+δ)(θ ± ϑ/2)}` for one offset `ϑ`.
struct AxisTable {
    minus: Vec<Complex64>,
    plus: Vec<Complex64>,
}

fn axis_tables(modes: &[Mode], delta: f64, theta: f64, offsets: &[(f64, f64)]) -> Vec<AxisTable> {
    offsets
        .iter()
        .map(|&(t, _)| AxisTable {
            minus: modes.iter().map(|&m| Complex64::cis((m as f64 + delta) * (theta - t / 2.0))).collect(),
            plus: modes.iter().map(|&m| Complex64::cis((m as f64 + delta) * (theta + t / 2.0))).collect(),
        })
        .collect()
}

fn single_2d(state: &TwoModeState, point: PhasePoint4, order: usize) -> Complex64 {
    let (d1, d2) = state.deltas();
    let mut first: Vec<Mode> = state.coefficients().iter().map(|&((m, _), _)| m).collect();
    let mut second: Vec<Mode> = state.coefficients().iter().map(|&((_, n), _)| n).collect();
    first.sort_unstable();
    first.dedup();
    second.sort_unstable();
    second.dedup();
    let index = |list: &[Mode], m: Mode| list.binary_search(&m).expect("mode is in the list");
    let terms: Vec<(usize, usize, Complex64)> =
        state.coefficients().iter().map(|&((m, n), c)| (index(&first, m), index(&second, n), c)).collect();

    let grid = offsets(order);
    let rows = axis_tables(&first, d1, point.theta1, &grid);
    let cols = axis_tables(&second, d2, point.theta2, &grid);
    let col_phase: Vec<Complex64> = grid.iter().map(|&(t, w)| w * Complex64::cis(-point.p2 * t)).collect();

    let row_sums: Vec<Complex64> = grid
        .par_iter()
        .zip(rows.par_iter())
        .map(|(&(t1, w1), row)| {
            let mut acc = Complex64::default();
            for (col, &phase) in cols.iter().zip(&col_phase) {
                let (mut minus, mut plus) = (Complex64::default(), Complex64::default());
                for &(i, j, c) in &terms {
                    minus += c * row.minus[i] * col.minus[j];
                    plus += c * row.plus[i] * col.plus[j];
                }
                acc += phase * minus.conj() * plus;
            }
            w1 * Complex64::cis(-point.p1 * t1) * acc
        })
        .collect();
    row_sums.iter().sum::<Complex64>() / (TAU * TAU * TAU * TAU)
}

/// Two-mode version: a tensor-product Gauss rule over `(ϑ₁, ϑ₂)`.
pub fn oracle_wigner_2d(state: &TwoModeState, point: PhasePoint4, nodes: usize) -> Result<OracleValue> {
    state.check_normalized()?;
    let s1 = spread(state.coefficients().iter().map(|&((m, _), _)| m));
    let s2 = spread(state.coefficients().iter().map(|&((_, n), _)| n));
    let order = check_nodes(nodes, s1.max(s2))?;
    finish(single_2d(state, point, order), single_2d(state, point, order / 2))
}

/// Tolerance applied to each sinc identity.
pub const SINC_IDENTITY_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub value: f64,
    pub expected: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SincIdentityReport {
    pub radius: f64,
    pub tolerance: f64,
    pub checks: Vec<IdentityCheck>,
    pub max_deviation: f64,
    pub passed: bool,
}

/// Checks `∫ sinc π(p+a) = 1`, `∫ sinc² π(p+a) = 1` and
/// `∫ sinc π(p−m) sinc π(p−n) = δ_mn` under truncation at radius `L`.
pub fn verify_sinc_identities(radius: f64) -> Result<SincIdentityReport> {
    if !(radius >= 100.0) {
        return Err(WignerError::InvalidParameter(format!("truncation radius {radius} is below 100")));
    }
    let t = Truncation::with_radius(radius);
    t.validate()?;
    let mut checks = Vec::new();
    let mut push = |name: String, value: f64, expected: f64| {
        checks.push(IdentityCheck { name, value, expected, deviation: (value - expected).abs() });
    };
    for a in [0.0, 0.37, -1.5, 2.25] {
        push(format!("single sinc, a = {a}"), t.integrate_oscillatory(|p| sinc_pi(p + a)), 1.0);
        push(format!("squared sinc, a = {a}"), t.integrate_decaying(|p| sinc_pi(p + a).powi(2)), 1.0);
    }
    for m in 0..=3 {
        for n in m..=3 {
            let (mf, nf) = (m as f64, n as f64);
            let v = t.integrate_decaying(|p| sinc_pi(p - mf) * sinc_pi(p - nf));
            push(format!("sinc product, m = {m}, n = {n}"), v, if m == n { 1.0 } else { 0.0 });
        }
    }
    let max_deviation = checks.iter().map(|c| c.deviation).fold(0.0, f64::max);
    Ok(SincIdentityReport {
        radius,
        tolerance: SINC_IDENTITY_TOLERANCE,
        checks,
        max_deviation,
        passed: max_deviation <= SINC_IDENTITY_TOLERANCE,
    })
}
