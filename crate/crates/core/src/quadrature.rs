//! Quadrature building blocks: Gauss–Legendre panels, the periodic trapezoid
//! rule and truncated integrals over the momentum line.
//!
//! Panel sums may be computed in parallel; they are always reduced in
//! ascending panel order so results are bit-for-bit reproducible.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;

use crate::error::{Result, WignerError};

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "Gauss-Legendre order must be positive");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Nodes and weights mapped onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
        self.nodes.iter().zip(&self.weights).map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite Gauss–Legendre nodes and weights over `[a, b]` split into
/// `panels` equal panels.
pub fn composite_nodes(rule: &GaussLegendre, a: f64, b: f64, panels: usize) -> Vec<(f64, f64)> {
    let h = (b - a) / panels as f64;
    (0..panels)
        .flat_map(|k| {
            let lo = a + k as f64 * h;
            rule.mapped(lo, lo + h).collect::<Vec<_>>()
        })
        .collect()
}

/// Composite Gauss–Legendre integral of `f` over `[a, b]`.
pub fn composite<F>(rule: &GaussLegendre, f: F, a: f64, b: f64, panels: usize) -> f64
where
    F: Fn(f64) -> f64 + Sync,
{
    let h = (b - a) / panels as f64;
    let sums: Vec<f64> = (0..panels)
        .into_par_iter()
        .map(|k| {
            let lo = a + k as f64 * h;
            rule.integrate(&f, lo, lo + h)
        })
        .collect();
    sums.iter().sum()
}

/// Equispaced nodes `−π + 2πk/n`, `k = 0..n`.
pub fn trapezoid_nodes(n: usize) -> impl Iterator<Item = f64> {
    let h = TAU / n as f64;
    (0..n).map(move |k| -PI + k as f64 * h)
}

/// Periodic trapezoid rule over one period `[−π, π)`. Exact for
/// trigonometric polynomials of degree below `n`.
pub fn periodic_trapezoid<F: Fn(f64) -> f64>(f: F, n: usize) -> f64 {
    assert!(n >= 1, "trapezoid rule needs at least one node");
    TAU / n as f64 * trapezoid_nodes(n).map(f).sum::<f64>()
}

/// Node count used for θ-integration: `4·max|m| + 16`.
pub fn angle_nodes(max_abs_mode: i32) -> usize {
    4 * max_abs_mode.unsigned_abs() as usize + 16
}

/// How an integral over the whole momentum line is cut off.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    /// Integration runs over `[−radius, radius]`.
    pub radius: f64,
    pub panel_width: f64,
    pub order: usize,
}

impl Default for Truncation {
    fn default() -> Self {
        Self { radius: 1e3, panel_width: 0.5, order: 8 }
    }
}

impl Truncation {
    pub fn with_radius(radius: f64) -> Self {
        Self { radius, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let whole = (self.radius / self.panel_width).round();
        if !(self.radius.is_finite() && self.radius > 0.0 && self.panel_width > 0.0 && self.order > 0) {
            return Err(WignerError::InvalidParameter(format!("bad truncation {self:?}")));
        }
        if (whole * self.panel_width - self.radius).abs() > 1e-9 * self.radius {
            return Err(WignerError::InvalidParameter(format!(
                "truncation radius {} is not a multiple of the panel width {}",
                self.radius, self.panel_width
            )));
        }
        Ok(())
    }

    fn panels(&self, length: f64) -> usize {
        ((length / self.panel_width).round() as usize).max(1)
    }

    fn rule(&self) -> GaussLegendre {
        GaussLegendre::new(self.order)
    }

    /// `∫_{−L}^{L} f`. Adequate for absolutely convergent (`~1/p²`) tails.
    pub fn integrate_decaying<F: Fn(f64) -> f64 + Sync>(&self, f: F) -> f64 {
        let l = self.radius;
        composite(&self.rule(), f, -l, l, self.panels(2.0 * l))
    }

    /// `∫ f` for conditionally convergent single-sinc integrands: the mean of
    /// the truncations at `L` and `L + 1` (half a period of `sin πp`), which
    /// cancels the leading `1/L` tail.
    pub fn integrate_oscillatory<F: Fn(f64) -> f64 + Sync>(&self, f: F) -> f64 {
        let l = self.radius;
        let rule = self.rule();
        let inner = composite(&rule, &f, -l, l, self.panels(2.0 * l));
        let shell =
            composite(&rule, &f, -l - 1.0, -l, self.panels(1.0)) + composite(&rule, &f, l, l + 1.0, self.panels(1.0));
        inner + shell / 2.0
    }

    /// Like [`Truncation::integrate_decaying`], additionally comparing with the
    /// truncation at `L/2`; fails if the two differ by more than `tolerance`.
    pub fn integrate_decaying_checked<F: Fn(f64) -> f64 + Sync>(&self, f: F, tolerance: f64) -> Result<f64> {
        let l = self.radius;
        let half = l / 2.0;
        let rule = self.rule();
        let inner = composite(&rule, &f, -half, half, self.panels(l));
        let outer =
            composite(&rule, &f, -l, -half, self.panels(half)) + composite(&rule, &f, half, l, self.panels(half));
        if outer.abs() > tolerance {
            return Err(WignerError::QuadratureNotConverged { change: outer.abs(), tolerance });
        }
        Ok(inner + outer)
    }
}
