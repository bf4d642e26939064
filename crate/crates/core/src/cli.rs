//! Library side of the command-line tool: grid and state parsing, the command
//! implementations and their CSV / JSON writers. The binary only maps flags
//! onto these functions.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::closed_form::{bell_wigner, density_wigner, qubit_wigner, two_qubit_wigner};
use crate::error::{Result, WignerError};
use crate::kernel::{wigner_bilinear_1d, wigner_bilinear_2d, wigner_density_trace, PhasePoint, PhasePoint4};
use crate::marginal::{
    density_overlap, density_overlap_phase_space, marginal_angle, marginal_angle_2d, marginal_momentum,
    marginal_momentum_2d, transition_probability_direct, transition_probability_phase_space, WhittakerProfile,
    WhittakerProfile2,
};
use crate::oracle::{oracle_wigner_1d, oracle_wigner_2d, verify_sinc_identities, SincIdentityReport};
use crate::quadrature::Truncation;
use crate::spiral::{InterferenceGeometry, SpiralSample};
use crate::state::{
    bell_state, density_from_qubit, parse_state_json, AnyState, BellKind, BlochDensity, GeneralState, Mode, QubitSpec,
    TwoModeState, TwoQubitModes, TwoQubitSpec,
};

/// Default θ-node count for phase-space overlaps.
pub const OVERLAP_THETA_NODES: usize = 512;
/// Values below `−threshold` count as negative.
pub const NEGATIVITY_THRESHOLD: f64 = 1e-12;

macro_rules! keyword_enum {
    ($name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq)]
        pub enum $name {
            $($variant),+
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self {
                    $($name::$variant => $text),+
                })
            }
        }

        impl FromStr for $name {
            type Err = WignerError;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($text => Ok($name::$variant),)+
                    other => Err(WignerError::InvalidParameter(format!(
                        "unknown {} `{other}`",
                        stringify!($name)
                    ))),
                }
            }
        }
    };
}

keyword_enum!(EvalPath { Closed => "closed", Bilinear => "bilinear", Oracle => "oracle" });
keyword_enum!(Scale { Raw => "raw", TwoPiD => "two-pi-d" });
keyword_enum!(OutputFormat { Csv => "csv", Json => "json" });
keyword_enum!(MarginalAxis { Angle => "angle", Momentum => "momentum" });
keyword_enum!(ProbabilityMethod { Analytic => "analytic", Quadrature => "quadrature" });
keyword_enum!(OverlapMethod { Direct => "direct", PhaseSpace => "phase-space" });

/// Parses a real number, allowing multiples and fractions of π:
/// `1.5`, `-pi`, `pi/4`, `2pi`, `-3*pi/2`, `1/3`.
pub fn parse_value(text: &str) -> Result<f64> {
    let bad = || WignerError::InvalidParameter(format!("cannot read `{text}` as a number"));
    let s = text.trim().to_ascii_lowercase();
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, s.strip_prefix('+').unwrap_or(&s)),
    };
    let (numerator, denominator) = match body.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (body, None),
    };
    let numerator = match numerator.strip_suffix("pi") {
        Some(factor) => {
            let factor = factor.strip_suffix('*').unwrap_or(factor);
            let factor = if factor.is_empty() { 1.0 } else { factor.parse::<f64>().map_err(|_| bad())? };
            factor * PI
        }
        None => numerator.parse::<f64>().map_err(|_| bad())?,
    };
    let value = match denominator {
        Some(d) => numerator / d.parse::<f64>().map_err(|_| bad())?,
        None => numerator,
    };
    if value.is_finite() {
        Ok(sign * value)
    } else {
        Err(bad())
    }
}

fn parse_mode(text: &str) -> Result<Mode> {
    text.trim().parse().map_err(|_| WignerError::StateParse(format!("mode index `{text}` is not an integer")))
}

fn parse_list(text: &str, flag: &str, allowed: &[usize]) -> Result<Vec<String>> {
    let parts: Vec<String> = text.split(',').map(|s| s.trim().to_string()).collect();
    if !allowed.contains(&parts.len()) {
        return Err(WignerError::StateParse(format!(
            "--{flag} takes {} comma-separated values, got {}",
            allowed.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" or "),
            parts.len()
        )));
    }
    Ok(parts)
}

fn state_value(text: &str) -> Result<f64> {
    parse_value(text).map_err(|e| WignerError::StateParse(e.to_string()))
}

/// One axis of a [`PhaseGrid`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridAxis {
    pub name: String,
    pub values: Vec<f64>,
    /// `false` for a held coordinate.
    pub swept: bool,
}

impl GridAxis {
    fn is_angle(name: &str) -> bool {
        name.starts_with("theta")
    }
}

/// A rectangular sample grid over named coordinates. Angle axes are sampled
/// half-open (`[lo, hi)`, so a full turn has no duplicate), momentum axes
/// closed (`[lo, hi]`).
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseGrid {
    axes: Vec<GridAxis>,
}

impl PhaseGrid {
    /// Parses `name=LO:HI:N` (swept) or `name=VALUE` (held) items separated
    /// by commas. Every name in `names` must appear exactly once.
    pub fn parse(text: &str, names: &[&str]) -> Result<Self> {
        let mut found: BTreeMap<&str, GridAxis> = BTreeMap::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, spec) =
                item.split_once('=').ok_or_else(|| WignerError::InvalidGrid(format!("`{item}` is not name=value")))?;
            let name = name.trim();
            let key = *names
                .iter()
                .find(|n| **n == name)
                .ok_or_else(|| WignerError::InvalidGrid(format!("unknown axis `{name}`, expected {names:?}")))?;
            if found.contains_key(key) {
                return Err(WignerError::InvalidGrid(format!("axis `{name}` given twice")));
            }
            found.insert(key, Self::parse_axis(key, spec)?);
        }
        let axes = names
            .iter()
            .map(|n| found.remove(n).ok_or_else(|| WignerError::InvalidGrid(format!("axis `{n}` needs a value"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { axes })
    }

    fn parse_axis(name: &str, spec: &str) -> Result<GridAxis> {
        let grid_value = |s: &str| parse_value(s).map_err(|e| WignerError::InvalidGrid(e.to_string()));
        let parts: Vec<&str> = spec.split(':').collect();
        match parts.as_slice() {
            [value] => Ok(GridAxis { name: name.into(), values: vec![grid_value(value)?], swept: false }),
            [lo, hi, n] => {
                let (lo, hi) = (grid_value(lo)?, grid_value(hi)?);
                let n: usize = n
                    .trim()
                    .parse()
                    .map_err(|_| WignerError::InvalidGrid(format!("node count `{n}` is not a whole number")))?;
                if n < 2 {
                    return Err(WignerError::InvalidGrid(format!("axis `{name}` needs at least 2 nodes")));
                }
                if lo >= hi {
                    return Err(WignerError::InvalidGrid(format!("axis `{name}` has an empty range")));
                }
                let step = if GridAxis::is_angle(name) { (hi - lo) / n as f64 } else { (hi - lo) / (n - 1) as f64 };
                let values = (0..n).map(|k| lo + k as f64 * step).collect();
                Ok(GridAxis { name: name.into(), values, swept: true })
            }
            _ => Err(WignerError::InvalidGrid(format!("axis `{name}`: expected VALUE or LO:HI:N, got `{spec}`"))),
        }
    }

    pub fn axes(&self) -> &[GridAxis] {
        &self.axes
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.values.len()).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The `index`-th point in row-major order (first axis slowest).
    pub fn point(&self, mut index: usize) -> Vec<f64> {
        let mut coords = vec![0.0; self.axes.len()];
        for (slot, axis) in coords.iter_mut().zip(&self.axes).rev() {
            let n = axis.values.len();
            *slot = axis.values[index % n];
            index /= n;
        }
        coords
    }

    pub fn points(&self) -> impl Iterator<Item = Vec<f64>> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }

    /// Evaluates `f` at every point in parallel; the result is in row-major
    /// order regardless of scheduling.
    pub fn evaluate<F>(&self, f: F) -> Result<Vec<f64>>
    where
        F: Fn(&[f64]) -> Result<f64> + Sync,
    {
        (0..self.len()).into_par_iter().map(|i| f(&self.point(i))).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridMetadata {
    pub state: String,
    pub quantity: String,
    pub path: String,
    pub scale: String,
}

/// Values sampled on a grid, with enough metadata to reproduce them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridResult {
    pub axes: Vec<GridAxis>,
    pub values: Vec<f64>,
    pub metadata: GridMetadata,
}

fn fmt_number(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_table(meta: &[(&str, &str)], columns: &[&str], rows: impl Iterator<Item = Vec<f64>>) -> String {
    let mut out = String::new();
    for (k, v) in meta {
        let _ = writeln!(out, "# {k}: {v}");
    }
    let _ = writeln!(out, "# {}", columns.join(","));
    for row in rows {
        let line: Vec<String> = row.into_iter().map(fmt_number).collect();
        let _ = writeln!(out, "{}", line.join(","));
    }
    out
}

impl GridResult {
    pub fn to_csv(&self) -> String {
        let grid = PhaseGrid { axes: self.axes.clone() };
        let mut columns: Vec<&str> = self.axes.iter().map(|a| a.name.as_str()).collect();
        columns.push("value");
        let m = &self.metadata;
        let meta = [
            ("state", m.state.as_str()),
            ("quantity", m.quantity.as_str()),
            ("path", m.path.as_str()),
            ("scale", m.scale.as_str()),
        ];
        let rows = grid.points().zip(&self.values).map(|(mut p, &v)| {
            p.push(v);
            p
        });
        csv_table(&meta, &columns, rows)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("grid result serializes") + "\n"
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

/// A state given on the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum StateInput {
    Qubit(QubitSpec),
    Bell { kind: BellKind, m0: Mode },
    TwoQubit(TwoQubitSpec),
    Bloch(BlochDensity),
    Pure(AnyState),
}

impl StateInput {
    /// `m0,m1,alpha,beta[,delta]`
    pub fn parse_qubit(text: &str) -> Result<Self> {
        let p = parse_list(text, "qubit", &[4, 5])?;
        let spec = QubitSpec::new(parse_mode(&p[0])?, parse_mode(&p[1])?, state_value(&p[2])?, state_value(&p[3])?)?;
        let delta = p.get(4).map(|d| state_value(d)).transpose()?.unwrap_or(0.0);
        Ok(Self::Qubit(spec.with_delta(delta)?))
    }

    /// `kind,m0` with kind one of `phi+`, `phi-`, `psi+`, `psi-`.
    pub fn parse_bell(text: &str) -> Result<Self> {
        let p = parse_list(text, "bell", &[2])?;
        let kind: BellKind = p[0].parse()?;
        let m0 = parse_mode(&p[1])?;
        if m0 == 0 {
            return Err(WignerError::ZeroMode);
        }
        Ok(Self::Bell { kind, m0 })
    }

    /// `m0,m1,n0,n1,beta,gamma,phi,a10,a01,a11[,d1,d2]`
    pub fn parse_two_qubit(text: &str) -> Result<Self> {
        let p = parse_list(text, "two-qubit", &[10, 12])?;
        let modes = TwoQubitModes::new(parse_mode(&p[0])?, parse_mode(&p[1])?, parse_mode(&p[2])?, parse_mode(&p[3])?)?;
        let v: Vec<f64> = p[4..].iter().map(|s| state_value(s)).collect::<Result<_>>()?;
        let spec = TwoQubitSpec::from_angles(modes, v[0], v[1], v[2], [v[3], v[4], v[5]])?;
        let spec = if v.len() == 8 { spec.with_deltas(v[6], v[7])? } else { spec };
        Ok(Self::TwoQubit(spec))
    }

    /// `m0,m1,a1,a2,a3[,delta]`
    pub fn parse_bloch(text: &str) -> Result<Self> {
        let p = parse_list(text, "bloch", &[5, 6])?;
        let a = [state_value(&p[2])?, state_value(&p[3])?, state_value(&p[4])?];
        let rho = BlochDensity::new(parse_mode(&p[0])?, parse_mode(&p[1])?, a)?;
        let delta = p.get(5).map(|d| state_value(d)).transpose()?.unwrap_or(0.0);
        Ok(Self::Bloch(rho.with_delta(delta)?))
    }

    pub fn from_json(text: &str, normalize: bool) -> Result<Self> {
        Ok(Self::Pure(parse_state_json(text, normalize)?))
    }

    pub fn dimension(&self) -> usize {
        match self {
            Self::Qubit(_) | Self::Bloch(_) | Self::Pure(AnyState::OneMode(_)) => 1,
            _ => 2,
        }
    }

    pub fn phase_axes(&self) -> &'static [&'static str] {
        if self.dimension() == 1 {
            &["theta", "p"]
        } else {
            &["theta1", "theta2", "p1", "p2"]
        }
    }

    pub fn marginal_axes(&self, axis: MarginalAxis) -> &'static [&'static str] {
        match (self.dimension(), axis) {
            (1, MarginalAxis::Angle) => &["theta"],
            (1, MarginalAxis::Momentum) => &["p"],
            (_, MarginalAxis::Angle) => &["theta1", "theta2"],
            (_, MarginalAxis::Momentum) => &["p1", "p2"],
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Self::Qubit(q) => {
                format!("qubit m0={} m1={} alpha={} beta={} delta={}", q.m0(), q.m1(), q.alpha(), q.beta(), q.delta())
            }
            Self::Bell { kind, m0 } => format!("bell {kind} m0={m0}"),
            Self::TwoQubit(s) => {
                let m = s.modes();
                format!(
                    "two-qubit modes=({},{},{},{}) amplitudes={:?} phases={:?} deltas={:?}",
                    m.m0,
                    m.m1,
                    m.n0,
                    m.n1,
                    s.amplitudes(),
                    s.phases(),
                    s.deltas()
                )
            }
            Self::Bloch(r) => format!("bloch m0={} m1={} a={:?} delta={}", r.m0(), r.m1(), r.bloch_vector(), r.delta()),
            Self::Pure(s) => format!("json {}", s.to_json()),
        }
    }

    /// Closed form where one exists, otherwise the kernel sum.
    pub fn default_path(&self) -> EvalPath {
        match self {
            Self::Pure(_) => EvalPath::Bilinear,
            _ => EvalPath::Closed,
        }
    }

    fn pure_state(&self) -> Option<AnyState> {
        match self {
            Self::Qubit(q) => Some(AnyState::OneMode(q.to_state())),
            Self::Bell { kind, m0 } => Some(AnyState::TwoMode(bell_state(*kind, *m0).expect("m0 checked on parse"))),
            Self::TwoQubit(s) => Some(AnyState::TwoMode(s.to_state())),
            Self::Bloch(_) => None,
            Self::Pure(s) => Some(s.clone()),
        }
    }

    /// The state as a convex combination of pure states.
    pub fn mixture(&self) -> Vec<(f64, AnyState)> {
        match self {
            Self::Bloch(rho) => {
                rho.pure_components().into_iter().map(|(w, q)| (w, AnyState::OneMode(q.to_state()))).collect()
            }
            other => vec![(1.0, other.pure_state().expect("pure input"))],
        }
    }

    /// Wigner function at `coords` (`[θ, p]` or `[θ₁, θ₂, p₁, p₂]`).
    pub fn wigner(&self, path: EvalPath, nodes: usize, coords: &[f64]) -> Result<f64> {
        let unsupported = || WignerError::UnsupportedPath { path: path.to_string(), state: self.describe() };
        match (path, coords) {
            (EvalPath::Closed, &[t, p]) => match self {
                Self::Qubit(q) => Ok(qubit_wigner(q, PhasePoint::new(t, p))),
                Self::Bloch(r) => Ok(density_wigner(r, PhasePoint::new(t, p))),
                _ => Err(unsupported()),
            },
            (EvalPath::Closed, &[t1, t2, p1, p2]) => {
                let pt = PhasePoint4::new(t1, t2, p1, p2);
                match self {
                    Self::Bell { kind, m0 } => bell_wigner(*kind, *m0, pt),
                    Self::TwoQubit(s) => Ok(two_qubit_wigner(s, pt)),
                    _ => Err(unsupported()),
                }
            }
            (EvalPath::Bilinear, _) => {
                if let Self::Bloch(r) = self {
                    return match coords {
                        &[t, p] => Ok(wigner_density_trace(r, PhasePoint::new(t, p))),
                        _ => Err(unsupported()),
                    };
                }
                self.pure_wigner(coords, |s, pt| wigner_bilinear_1d(s, pt), |s, pt| wigner_bilinear_2d(s, pt))
            }
            (EvalPath::Oracle, _) => {
                let mut total = 0.0;
                for (w, s) in self.mixture() {
                    let v = Self::Pure(s).pure_wigner(
                        coords,
                        |s, pt| oracle_wigner_1d(s, pt, nodes).map(|o| o.value),
                        |s, pt| oracle_wigner_2d(s, pt, nodes).map(|o| o.value),
                    )?;
                    total += w * v;
                }
                Ok(total)
            }
            _ => Err(WignerError::InvalidGrid(format!("expected {} coordinates", self.phase_axes().len()))),
        }
    }

    fn pure_wigner<F, G>(&self, coords: &[f64], one: F, two: G) -> Result<f64>
    where
        F: Fn(&GeneralState, PhasePoint) -> Result<f64>,
        G: Fn(&TwoModeState, PhasePoint4) -> Result<f64>,
    {
        let state = self.pure_state().expect("mixed states handled by the caller");
        match (state, coords) {
            (AnyState::OneMode(s), &[t, p]) => one(&s, PhasePoint::new(t, p)),
            (AnyState::TwoMode(s), &[t1, t2, p1, p2]) => two(&s, PhasePoint4::new(t1, t2, p1, p2)),
            _ => Err(WignerError::InvalidGrid(format!("expected {} coordinates", self.phase_axes().len()))),
        }
    }
}

fn check_grid_axes(grid: &PhaseGrid, names: &[&str]) -> Result<()> {
    let got: Vec<&str> = grid.axes().iter().map(|a| a.name.as_str()).collect();
    if got != names {
        return Err(WignerError::InvalidGrid(format!("grid axes {got:?} do not match {names:?}")));
    }
    Ok(())
}

/// Wigner function on a grid.
pub fn eval_grid(
    state: &StateInput,
    grid: &PhaseGrid,
    path: EvalPath,
    scale: Scale,
    nodes: usize,
) -> Result<GridResult> {
    check_grid_axes(grid, state.phase_axes())?;
    let factor = match scale {
        Scale::Raw => 1.0,
        Scale::TwoPiD => TAU.powi(state.dimension() as i32),
    };
    let values = grid.evaluate(|c| state.wigner(path, nodes, c).map(|v| factor * v))?;
    Ok(GridResult {
        axes: grid.axes().to_vec(),
        values,
        metadata: GridMetadata {
            state: state.describe(),
            quantity: "wigner".into(),
            path: path.to_string(),
            scale: scale.to_string(),
        },
    })
}

/// Angle or momentum marginal on a grid.
pub fn marginal_grid(state: &StateInput, axis: MarginalAxis, grid: &PhaseGrid) -> Result<GridResult> {
    check_grid_axes(grid, state.marginal_axes(axis))?;
    let mixture = state.mixture();
    let values = grid.evaluate(|c| {
        Ok(mixture
            .iter()
            .map(|(w, s)| {
                w * match (s, axis) {
                    (AnyState::OneMode(s), MarginalAxis::Angle) => marginal_angle(s, c[0]),
                    (AnyState::OneMode(s), MarginalAxis::Momentum) => marginal_momentum(s, c[0]),
                    (AnyState::TwoMode(s), MarginalAxis::Angle) => marginal_angle_2d(s, c[0], c[1]),
                    (AnyState::TwoMode(s), MarginalAxis::Momentum) => marginal_momentum_2d(s, c[0], c[1]),
                }
            })
            .sum())
    })?;
    Ok(GridResult {
        axes: grid.axes().to_vec(),
        values,
        metadata: GridMetadata {
            state: state.describe(),
            quantity: format!("{axis} marginal"),
            path: "closed".into(),
            scale: Scale::Raw.to_string(),
        },
    })
}

fn mode_key(m: Mode) -> String {
    m.to_string()
}

fn pair_key((m, n): (Mode, Mode)) -> String {
    format!("{m},{n}")
}

/// OAM probabilities keyed by mode (`"m"`) or mode pair (`"m,n"`).
pub fn probabilities(
    state: &StateInput,
    method: ProbabilityMethod,
    truncation: &Truncation,
) -> Result<BTreeMap<String, f64>> {
    let mut one: BTreeMap<Mode, f64> = BTreeMap::new();
    let mut two: BTreeMap<(Mode, Mode), f64> = BTreeMap::new();
    let (mut d1, mut d2) = (0.0, 0.0);
    for (w, s) in state.mixture() {
        match s {
            AnyState::OneMode(s) => {
                d1 = s.delta();
                for &(m, c) in s.coefficients() {
                    *one.entry(m).or_default() += w * c.norm_sqr();
                }
            }
            AnyState::TwoMode(s) => {
                (d1, d2) = s.deltas();
                for &(mn, c) in s.coefficients() {
                    *two.entry(mn).or_default() += w * c.norm_sqr();
                }
            }
        }
    }
    let tolerance = 1e-3;
    let out = match method {
        ProbabilityMethod::Analytic if state.dimension() == 1 => {
            one.into_iter().map(|(m, p)| (mode_key(m), p)).collect()
        }
        ProbabilityMethod::Analytic => two.into_iter().map(|(mn, p)| (pair_key(mn), p)).collect(),
        ProbabilityMethod::Quadrature if state.dimension() == 1 => {
            let modes: Vec<Mode> = one.keys().copied().collect();
            let profile = WhittakerProfile::new(renormalize(one), d1)?;
            profile.extract(&modes, truncation, tolerance)?.into_iter().map(|(m, p)| (mode_key(m), p)).collect()
        }
        ProbabilityMethod::Quadrature => {
            let pairs: Vec<(Mode, Mode)> = two.keys().copied().collect();
            let profile = WhittakerProfile2::new(renormalize(two), d1, d2)?;
            profile.extract(&pairs, truncation, tolerance)?.into_iter().map(|(mn, p)| (pair_key(mn), p)).collect()
        }
    };
    Ok(out)
}

/// Removes the rounding drift of a mixture so the weights sum to one.
fn renormalize<K: Ord>(weights: BTreeMap<K, f64>) -> BTreeMap<K, f64> {
    let total: f64 = weights.values().sum();
    weights.into_iter().map(|(k, w)| (k, w / total)).collect()
}

fn as_density(state: &StateInput) -> Option<BlochDensity> {
    match state {
        StateInput::Qubit(q) => Some(density_from_qubit(q)),
        StateInput::Bloch(r) => Some(*r),
        _ => None,
    }
}

/// Overlap `tr(ρ₁ρ₂)` (transition probability for pure states).
pub fn overlap(a: &StateInput, b: &StateInput, method: OverlapMethod, truncation: &Truncation) -> Result<f64> {
    if let (StateInput::Qubit(x), StateInput::Qubit(y)) = (a, b) {
        return match method {
            OverlapMethod::Direct => transition_probability_direct(x, y),
            OverlapMethod::PhaseSpace => transition_probability_phase_space(x, y, truncation, OVERLAP_THETA_NODES),
        };
    }
    if let (Some(x), Some(y)) = (as_density(a), as_density(b)) {
        return match method {
            OverlapMethod::Direct => density_overlap(&x, &y),
            OverlapMethod::PhaseSpace => density_overlap_phase_space(&x, &y, truncation, OVERLAP_THETA_NODES),
        };
    }
    let pure = |s: &StateInput| s.pure_state().ok_or(WignerError::SubspaceMismatch);
    match (method, pure(a)?, pure(b)?) {
        (OverlapMethod::Direct, AnyState::OneMode(x), AnyState::OneMode(y)) => Ok(x.inner(&y)?.norm_sqr()),
        (OverlapMethod::Direct, AnyState::TwoMode(x), AnyState::TwoMode(y)) => Ok(x.inner(&y)?.norm_sqr()),
        (OverlapMethod::Direct, _, _) => Err(WignerError::SubspaceMismatch),
        (OverlapMethod::PhaseSpace, _, _) => Err(WignerError::UnsupportedPath {
            path: method.to_string(),
            state: format!("{} / {}", a.describe(), b.describe()),
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NegativityReport {
    pub min: f64,
    pub argmin: BTreeMap<String, f64>,
    pub negative_fraction: f64,
    pub samples: usize,
    pub threshold: f64,
    pub path: String,
}

/// Minimum of the Wigner function over a grid and the share of samples
/// below `−threshold`.
pub fn negativity(
    state: &StateInput,
    grid: &PhaseGrid,
    path: EvalPath,
    nodes: usize,
    threshold: f64,
) -> Result<NegativityReport> {
    let result = eval_grid(state, grid, path, Scale::Raw, nodes)?;
    let (index, &min) = result
        .values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .ok_or_else(|| WignerError::InvalidGrid("grid is empty".into()))?;
    let argmin = grid.axes().iter().map(|a| a.name.clone()).zip(grid.point(index)).collect();
    let negative = result.values.iter().filter(|&&v| v < -threshold).count();
    Ok(NegativityReport {
        min,
        argmin,
        negative_fraction: negative as f64 / result.values.len() as f64,
        samples: result.values.len(),
        threshold,
        path: path.to_string(),
    })
}

/// Samples of the torus spiral as a CSV or JSON table.
pub fn spiral_table(
    geometry: &InterferenceGeometry,
    vartheta_minus: f64,
    samples: usize,
    format: OutputFormat,
) -> Result<String> {
    if samples == 0 {
        return Err(WignerError::InvalidParameter("need at least one spiral sample".into()));
    }
    let points: Vec<SpiralSample> = geometry.spiral(vartheta_minus, samples);
    let (s1, s2) = geometry.slopes();
    let period = geometry.closure_period();
    Ok(match format {
        OutputFormat::Csv => {
            let slopes = format!("{s1}, {s2}");
            let period = period.to_string();
            let vm = vartheta_minus.to_string();
            let meta = [("slopes", slopes.as_str()), ("period", period.as_str()), ("vartheta_minus", vm.as_str())];
            csv_table(
                &meta,
                &["vartheta_plus", "theta1", "theta2"],
                points.iter().map(|s| vec![s.vartheta_plus, s.theta1, s.theta2]),
            )
        }
        OutputFormat::Json => {
            let doc = json!({
                "slopes": [s1, s2],
                "period": period,
                "vartheta_minus": vartheta_minus,
                "samples": points,
            });
            serde_json::to_string_pretty(&doc).expect("spiral serializes") + "\n"
        }
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AgreementCheck {
    pub name: String,
    pub deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub sinc_identities: SincIdentityReport,
    pub checks: Vec<AgreementCheck>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

fn agreement(name: impl Into<String>, deviations: impl IntoIterator<Item = f64>, tolerance: f64) -> AgreementCheck {
    let deviation = deviations.into_iter().fold(0.0, f64::max);
    AgreementCheck { name: name.into(), deviation, tolerance, passed: deviation <= tolerance }
}

fn random_qubit(rng: &mut ChaCha8Rng) -> Result<QubitSpec> {
    let m0 = rng.gen_range(-4..=4);
    let m1 = loop {
        let m = rng.gen_range(-4..=4);
        if m != m0 {
            break m;
        }
    };
    QubitSpec::new(m0, m1, rng.gen_range(0.0..TAU), rng.gen_range(0.0..=PI / 2.0))?.with_delta(rng.gen_range(0.0..1.0))
}

fn random_point(rng: &mut ChaCha8Rng) -> (f64, f64) {
    (rng.gen_range(-PI..PI), rng.gen_range(-5.0..5.0))
}

/// Sinc identities plus seeded agreement checks between the evaluation paths
/// and between the two overlap formulas.
pub fn verify(radius: f64, seed: u64) -> Result<VerifyReport> {
    let sinc_identities = verify_sinc_identities(radius)?;
    let truncation = Truncation::with_radius(radius);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    let (mut closed, mut oracle) = (Vec::new(), Vec::new());
    for _ in 0..10 {
        let spec = random_qubit(&mut rng)?;
        let state = spec.to_state();
        for _ in 0..5 {
            let (t, p) = random_point(&mut rng);
            let pt = PhasePoint::new(t, p);
            let b = wigner_bilinear_1d(&state, pt)?;
            closed.push((qubit_wigner(&spec, pt) - b).abs());
            oracle.push((oracle_wigner_1d(&state, pt, crate::oracle::DEFAULT_ORACLE_NODES)?.value - b).abs());
        }
    }
    checks.push(agreement("qubit closed form vs kernel sum", closed, 1e-12));
    checks.push(agreement("qubit oracle vs kernel sum", oracle, 1e-9));

    let (mut closed, mut oracle) = (Vec::new(), Vec::new());
    for _ in 0..4 {
        let modes = loop {
            let m: [Mode; 4] = std::array::from_fn(|_| rng.gen_range(-3..=3));
            if let Ok(modes) = TwoQubitModes::new(m[0], m[1], m[2], m[3]) {
                break modes;
            }
        };
        let spec = TwoQubitSpec::from_angles(
            modes,
            rng.gen_range(0.0..PI),
            rng.gen_range(0.0..PI),
            rng.gen_range(0.0..TAU),
            std::array::from_fn(|_| rng.gen_range(0.0..TAU)),
        )?
        .with_deltas(rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0))?;
        let state = spec.to_state();
        for _ in 0..2 {
            let (t1, p1) = random_point(&mut rng);
            let (t2, p2) = random_point(&mut rng);
            let pt = PhasePoint4::new(t1, t2, p1, p2);
            let b = wigner_bilinear_2d(&state, pt)?;
            closed.push((two_qubit_wigner(&spec, pt) - b).abs());
            oracle.push((oracle_wigner_2d(&state, pt, 256)?.value - b).abs());
        }
    }
    checks.push(agreement("2-qubit closed form vs kernel sum", closed, 1e-12));
    checks.push(agreement("2-qubit oracle vs kernel sum", oracle, 1e-9));

    let mut overlaps = Vec::new();
    for _ in 0..5 {
        let a = random_qubit(&mut rng)?;
        let b = QubitSpec::new(a.m0(), a.m1(), rng.gen_range(0.0..TAU), rng.gen_range(0.0..=PI / 2.0))?
            .with_delta(a.delta())?;
        let direct = transition_probability_direct(&a, &b)?;
        let phase_space = transition_probability_phase_space(&a, &b, &truncation, OVERLAP_THETA_NODES)?;
        overlaps.push((direct - phase_space).abs());
    }
    checks.push(agreement("transition probability, phase space vs direct", overlaps, 1e-3));

    let passed = sinc_identities.passed && checks.iter().all(|c| c.passed);
    Ok(VerifyReport { seed, sinc_identities, checks, passed })
}

/// Exit status for an error: 1 for a failed numerical check, 2 for bad input.
pub fn exit_code(err: &WignerError) -> i32 {
    match err {
        WignerError::QuadratureNotConverged { .. } | WignerError::NumericalHermiticityViolation { .. } => 1,
        _ => 2,
    }
}

/// Renders a probability map as JSON.
pub fn probabilities_json(probs: &BTreeMap<String, f64>) -> String {
    let map: serde_json::Map<String, Value> = probs.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
    serde_json::to_string_pretty(&Value::Object(map)).expect("map serializes") + "\n"
}
