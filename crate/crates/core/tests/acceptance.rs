//! Acceptance suite. Prints one PASS/FAIL line per criterion (with sub-check
//! lines underneath). A few sub-checks test statements that are false as
//! written; they are pinned as expected failures and still print FAIL. The
//! process exits nonzero if any other sub-check fails or a pinned one passes.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, PI, TAU};
use std::time::{Duration, Instant};

use aoam_wigner::cli::{eval_grid, EvalPath, PhaseGrid, Scale, StateInput};
use aoam_wigner::closed_form::{bell_family_wigner, qubit_terms, BellFamily, BellFamilyKind};
use aoam_wigner::kernel::{bilinear_sum_1d, bilinear_sum_2d};
use aoam_wigner::marginal::{
    density_overlap, marginal_angle, marginal_angle_2d, marginal_momentum, marginal_momentum_2d,
    normalization_integral, normalization_integral_2d, p_integrated_wigner, p_integrated_wigner_2d,
    theta_integrated_wigner, theta_integrated_wigner_2d, transition_probability_direct,
    transition_probability_phase_space, WhittakerProfile, WhittakerProfile2,
};
use aoam_wigner::*;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_617;

const CLOSED_TOL: f64 = 1e-12;
const ORACLE_TOL: f64 = 1e-9;
const QUADRATURE_TOL: f64 = 1e-3;
const ORACLE_NODES: usize = 512;
const TRIPLE_PATH_BUDGET: Duration = Duration::from_secs(30);
const GRID_BUDGET: Duration = Duration::from_secs(5);

struct Criterion {
    id: usize,
    title: &'static str,
    checks: Vec<Check>,
    notes: Vec<String>,
}

struct Check {
    name: String,
    value: f64,
    tolerance: f64,
    passed: bool,
    expected_to_fail: bool,
}

impl Criterion {
    fn new(id: usize, title: &'static str) -> Self {
        Self { id, title, checks: Vec::new(), notes: Vec::new() }
    }

    /// Max deviation must not exceed `tolerance`.
    fn within(&mut self, name: impl Into<String>, deviations: impl IntoIterator<Item = f64>, tolerance: f64) {
        let value = deviations.into_iter().fold(0.0, f64::max);
        self.checks.push(Check {
            name: name.into(),
            value,
            tolerance,
            passed: value <= tolerance,
            expected_to_fail: false,
        });
    }

    /// Marks the most recent check as testing a false statement.
    fn expect_failure(&mut self) {
        self.checks.last_mut().expect("a check to mark").expected_to_fail = true;
    }

    /// Sub-checks whose outcome differs from the pinned expectation.
    fn surprises(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| c.passed == c.expected_to_fail).map(|c| c.name.as_str()).collect()
    }

    /// Value must be at least `floor`.
    fn at_least(&mut self, name: impl Into<String>, value: f64, floor: f64) {
        self.checks.push(Check {
            name: name.into(),
            value,
            tolerance: floor,
            passed: value >= floor,
            expected_to_fail: false,
        });
    }

    fn elapsed(&mut self, name: impl Into<String>, took: Duration, budget: Duration) {
        self.checks.push(Check {
            name: name.into(),
            value: took.as_secs_f64(),
            tolerance: budget.as_secs_f64(),
            passed: took <= budget,
            expected_to_fail: false,
        });
    }

    fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn report(&self) {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        println!("{verdict} [{}] {}", self.id, self.title);
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            let pinned = if c.expected_to_fail { "  [expected failure]" } else { "" };
            println!("    {mark} {:<62} {:>12.3e}  (limit {:.0e}){pinned}", c.name, c.value, c.tolerance);
        }
        for n in &self.notes {
            println!("    note: {n}");
        }
    }
}

fn random_modes(rng: &mut ChaCha8Rng, range: i32) -> (Mode, Mode) {
    let a = rng.gen_range(-range..=range);
    loop {
        let b = rng.gen_range(-range..=range);
        if b != a {
            return (a, b);
        }
    }
}

fn random_qubit(rng: &mut ChaCha8Rng) -> QubitSpec {
    let (m0, m1) = random_modes(rng, 5);
    QubitSpec::new(m0, m1, rng.gen_range(0.0..TAU), rng.gen_range(0.0..=PI / 2.0))
        .unwrap()
        .with_delta(rng.gen_range(0.0..1.0))
        .unwrap()
}

fn random_two_qubit(rng: &mut ChaCha8Rng) -> TwoQubitSpec {
    let (m0, m1) = random_modes(rng, 4);
    let (n0, n1) = random_modes(rng, 4);
    let modes = TwoQubitModes::new(m0, m1, n0, n1).unwrap();
    let phases = [rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU)];
    TwoQubitSpec::from_angles(modes, rng.gen_range(0.0..PI), rng.gen_range(0.0..PI), rng.gen_range(0.0..TAU), phases)
        .unwrap()
        .with_deltas(rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0))
        .unwrap()
}

fn random_qudit(rng: &mut ChaCha8Rng) -> GeneralState {
    let size = rng.gen_range(1..=7);
    let mut modes: Vec<Mode> = Vec::new();
    while modes.len() < size {
        let m = rng.gen_range(-8..=8);
        if !modes.contains(&m) {
            modes.push(m);
        }
    }
    let coefficients: Vec<(Mode, Complex64)> =
        modes.into_iter().map(|m| (m, Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))).collect();
    GeneralState::normalized(coefficients, rng.gen_range(0.0..1.0)).unwrap()
}

fn random_point(rng: &mut ChaCha8Rng) -> PhasePoint {
    PhasePoint::new(rng.gen_range(-PI..PI), rng.gen_range(-10.0..10.0))
}

fn random_point4(rng: &mut ChaCha8Rng) -> PhasePoint4 {
    PhasePoint4::new(rng.gen_range(-PI..PI), rng.gen_range(-PI..PI), rng.gen_range(-6.0..6.0), rng.gen_range(-6.0..6.0))
}

fn triple_path_agreement(rng: &mut ChaCha8Rng) -> Criterion {
    let mut c = Criterion::new(1, "triple-path agreement: closed form / kernel sum / quadrature oracle");
    let start = Instant::now();

    let (mut closed, mut oracle_b, mut oracle_c) = (Vec::new(), Vec::new(), Vec::new());
    for _ in 0..100 {
        let spec = random_qubit(rng);
        let state = spec.to_state();
        for _ in 0..10 {
            let pt = random_point(rng);
            let a = qubit_wigner(&spec, pt);
            let b = wigner_bilinear_1d(&state, pt).unwrap();
            let o = oracle_wigner_1d(&state, pt, ORACLE_NODES).unwrap().value;
            closed.push((a - b).abs());
            oracle_b.push((o - b).abs());
            oracle_c.push((o - a).abs());
        }
    }
    c.within("100 qubits: closed vs kernel sum", closed, CLOSED_TOL);
    c.within("100 qubits: oracle vs kernel sum", oracle_b, ORACLE_TOL);
    c.within("100 qubits: oracle vs closed", oracle_c, ORACLE_TOL);

    let (mut closed, mut oracle_b, mut oracle_c) = (Vec::new(), Vec::new(), Vec::new());
    for _ in 0..50 {
        let spec = random_two_qubit(rng);
        let state = spec.to_state();
        for _ in 0..10 {
            let pt = random_point4(rng);
            let a = two_qubit_wigner(&spec, pt);
            let b = wigner_bilinear_2d(&state, pt).unwrap();
            let o = oracle_wigner_2d(&state, pt, ORACLE_NODES).unwrap().value;
            closed.push((a - b).abs());
            oracle_b.push((o - b).abs());
            oracle_c.push((o - a).abs());
        }
    }
    c.within("50 2-qubit specs: closed vs kernel sum", closed, CLOSED_TOL);
    c.within("50 2-qubit specs: oracle vs kernel sum", oracle_b, ORACLE_TOL);
    c.within("50 2-qubit specs: oracle vs closed", oracle_c, ORACLE_TOL);

    let mut oracle_b = Vec::new();
    for _ in 0..20 {
        let state = random_qudit(rng);
        for _ in 0..10 {
            let pt = random_point(rng);
            let b = wigner_bilinear_1d(&state, pt).unwrap();
            let o = oracle_wigner_1d(&state, pt, ORACLE_NODES).unwrap().value;
            oracle_b.push((o - b).abs());
        }
    }
    c.within("20 qudits (support <= 7, |m| <= 8): oracle vs kernel sum", oracle_b, ORACLE_TOL);
    c.note("qudits have no closed form; the kernel sum is their closed path");
    c.elapsed("runtime [s]", start.elapsed(), TRIPLE_PATH_BUDGET);
    c
}

fn grid_check(c: &mut Criterion, name: &str, state: &StateInput, grid: &str, reference: impl Fn(&[f64]) -> f64) {
    let start = Instant::now();
    let grid = PhaseGrid::parse(grid, state.phase_axes()).unwrap();
    let result = eval_grid(state, &grid, EvalPath::Closed, Scale::TwoPiD, ORACLE_NODES).unwrap();
    let took = start.elapsed();
    let dev = grid.points().zip(&result.values).map(|(p, v)| (v - reference(&p)).abs());
    c.within(format!("{name}: {} points vs reference formula", result.values.len()), dev, CLOSED_TOL);
    c.elapsed(format!("{name}: runtime [s]"), took, GRID_BUDGET);
}

fn grid_fixtures() -> Criterion {
    let mut c = Criterion::new(2, "reference grids reproduce the closed-form profiles on 64x121 grids");
    let s = sinc_pi;

    let q1 = StateInput::parse_qubit("1,-1,0,pi/4").unwrap();
    grid_check(&mut c, "balanced qubit (1, -1)", &q1, "theta=-pi:pi:64,p=-3:3:121", |x| {
        let (t, p) = (x[0], x[1]);
        0.5 * (s(p - 1.0) + s(p + 1.0)) + (2.0 * t).cos() * s(p)
    });

    let q2 = StateInput::parse_qubit("1,0,0,pi/3").unwrap();
    grid_check(&mut c, "tilted qubit (1, 0)", &q2, "theta=-pi:pi:64,p=-3:3:121", |x| {
        let (t, p) = (x[0], x[1]);
        0.25 * (s(p - 1.0) + 3.0 * s(p)) + 3f64.sqrt() / 2.0 * t.cos() * s(p - 0.5)
    });

    let psi = StateInput::parse_bell("psi-,1").unwrap();
    for theta2 in ["0", "pi/3", "-2.5"] {
        grid_check(
            &mut c,
            &format!("psi-, p2 = 1/2 (theta2 = {theta2})"),
            &psi,
            &format!("theta1=-pi:pi:64,theta2={theta2},p1=-3:3:121,p2=1/2"),
            |x| {
                let (t1, t2, p1) = (x[0], x[1], x[2]);
                (-s(p1 - 1.0) / 3.0 + s(p1 + 1.0) - 2.0 * (2.0 * (t1 - t2)).cos() * s(p1)) / PI
            },
        );
        grid_check(
            &mut c,
            &format!("psi-, p2 = 0 (theta2 = {theta2})"),
            &psi,
            &format!("theta1=-pi:pi:64,theta2={theta2},p1=-3:3:121,p2=0"),
            |x| -(2.0 * (x[0] - x[1])).cos() * s(x[2]),
        );
    }
    c
}

fn bell_exact_values(rng: &mut ChaCha8Rng) -> Criterion {
    let mut c = Criterion::new(3, "Bell negativity value at zero momenta; zeros at nonzero-integer momenta");
    let target = -1.0 / (4.0 * PI * PI);
    let (mut closed, mut oracle) = (Vec::new(), Vec::new());
    for m0 in [1, 2, -3] {
        let state = bell_state(BellKind::PsiMinus, m0).unwrap();
        for _ in 0..5 {
            let t = rng.gen_range(-PI..PI);
            let pt = PhasePoint4::new(t, t, 0.0, 0.0);
            closed.push((bell_wigner(BellKind::PsiMinus, m0, pt).unwrap() - target).abs());
            oracle.push((oracle_wigner_2d(&state, pt, ORACLE_NODES).unwrap().value - target).abs());
        }
    }
    c.within("psi-, theta1 = theta2, p = 0: closed form vs -1/(4 pi^2)", closed, ORACLE_TOL);
    c.within("psi-, theta1 = theta2, p = 0: oracle vs -1/(4 pi^2)", oracle, ORACLE_TOL);

    // the literal claim: V = 0 for all p1, p2 in Z \ {0}
    let m0 = 1;
    let (mut everywhere, mut off_support, mut on_support) = (Vec::new(), Vec::new(), Vec::new());
    for p1 in -3..=3 {
        for p2 in -3..=3 {
            if p1 == 0 || p2 == 0 {
                continue;
            }
            for _ in 0..4 {
                let pt = PhasePoint4::new(rng.gen_range(-PI..PI), rng.gen_range(-PI..PI), p1 as f64, p2 as f64);
                let v = bell_wigner(BellKind::PsiMinus, m0, pt).unwrap();
                everywhere.push(v.abs());
                if (p1, p2) == (m0, -m0) || (p1, p2) == (-m0, m0) {
                    on_support.push((v - 1.0 / (8.0 * PI * PI)).abs());
                } else {
                    off_support.push(v.abs());
                }
            }
        }
    }
    c.within("psi-, m0 = 1: |V| on the whole nonzero-integer lattice", everywhere, CLOSED_TOL);
    c.expect_failure();
    c.within("psi-, m0 = 1: |V| off (m0,-m0), (-m0,m0)", off_support, CLOSED_TOL);
    c.within("psi-, m0 = 1: V - 1/(8 pi^2) at (m0,-m0), (-m0,m0)", on_support, CLOSED_TOL);
    c.note("the lattice-wide zero claim is false at (p1,p2) = (m0,-m0), (-m0,m0):");
    c.note("there (2 pi)^2 V = 1/2 (the two diagonal sinc products are 1 and 0, the interference sinc is 0)");
    c
}

fn marginals() -> Criterion {
    let mut c = Criterion::new(4, "marginals: p-integration (L = 1e3) and theta-integration (spectral)");
    let t = Truncation::default();
    let thetas: Vec<f64> = (0..64).map(|k| -PI + TAU * k as f64 / 64.0).collect();

    for (name, spec) in [
        ("balanced qubit", QubitSpec::new(1, -1, 0.0, FRAC_PI_4).unwrap()),
        ("tilted qubit", QubitSpec::new(1, 0, 0.0, FRAC_PI_3).unwrap()),
        ("qubit (3,-2), delta = 0.4", QubitSpec::new(3, -2, 1.1, 0.7).unwrap().with_delta(0.4).unwrap()),
    ] {
        let s = spec.to_state();
        let dev = thetas.iter().map(|&th| (p_integrated_wigner(&s, th, &t).unwrap() - marginal_angle(&s, th)).abs());
        c.within(format!("{name}: p-integral vs |psi|^2/2pi, 64 angles"), dev, QUADRATURE_TOL);
        let dev = (0..121).map(|k| {
            let p = -6.0 + 0.1 * k as f64;
            (theta_integrated_wigner(&s, p) - marginal_momentum(&s, p)).abs()
        });
        c.within(format!("{name}: theta-integral vs Whittaker profile"), dev, CLOSED_TOL);
    }

    let modes = TwoQubitModes::new(2, -1, 0, 1).unwrap();
    let family = BellFamily::new(BellFamilyKind::ZeroZeroOneOne, modes, 0.6, 0.9).unwrap();
    let s = family.to_state();
    let dev = thetas.iter().map(|&th| {
        let th2 = 0.5 - th;
        let expected = (1.0 + (1.2f64).sin() * family.interference_argument(th, th2).cos()) / (TAU * TAU);
        let analytic = (marginal_angle_2d(&s, th, th2) - expected).abs();
        let numeric = (p_integrated_wigner_2d(&s, th, th2, &t).unwrap() - expected).abs();
        analytic.max(numeric)
    });
    c.within("00-11 family: p-integral vs (1 + sin 2b cos v+)/(2pi)^2", dev, QUADRATURE_TOL);
    let dev = (0..121).map(|k| {
        let (p1, p2) = (-3.0 + 0.05 * k as f64, 2.0 - 0.04 * k as f64);
        let expected = (0.6f64).cos().powi(2) * sinc_pi(p1 - 2.0) * sinc_pi(p2)
            + (0.6f64).sin().powi(2) * sinc_pi(p1 + 1.0) * sinc_pi(p2 - 1.0);
        (theta_integrated_wigner_2d(&s, p1, p2) - expected)
            .abs()
            .max((marginal_momentum_2d(&s, p1, p2) - expected).abs())
    });
    c.within("00-11 family: theta-integral vs two-mode Whittaker profile", dev, CLOSED_TOL);
    c
}

fn probability_extraction() -> Criterion {
    let mut c = Criterion::new(5, "OAM probabilities from sinc orthonormality quadrature (L = 1e3)");
    let t = Truncation::default();
    let profile = WhittakerProfile::from_state(&QubitSpec::new(1, 0, 0.0, FRAC_PI_3).unwrap().to_state());
    let got = profile.extract(&[1, 0], &t, QUADRATURE_TOL).unwrap();
    c.within(
        "tilted qubit: (p_1, p_0) vs (0.25, 0.75)",
        [(got[&1] - 0.25).abs(), (got[&0] - 0.75).abs()],
        QUADRATURE_TOL,
    );
    for kind in BellKind::ALL {
        let state = bell_state(kind, 1).unwrap();
        let support: Vec<(Mode, Mode)> = state.coefficients().iter().map(|&(mn, _)| mn).collect();
        let got = WhittakerProfile2::from_state(&state).extract(&support, &t, QUADRATURE_TOL).unwrap();
        c.within(
            format!("bell {kind}, m0 = 1: pair weights vs (0.5, 0.5)"),
            got.values().map(|v| (v - 0.5).abs()),
            QUADRATURE_TOL,
        );
    }
    c
}

fn overlaps(rng: &mut ChaCha8Rng) -> Criterion {
    let mut c = Criterion::new(6, "phase-space overlap integral equals the transition probability");
    let t = Truncation::default();
    let mut dev = Vec::new();
    for _ in 0..50 {
        let a = random_qubit(rng);
        let b = QubitSpec::new(a.m0(), a.m1(), rng.gen_range(0.0..TAU), rng.gen_range(0.0..=PI / 2.0))
            .unwrap()
            .with_delta(a.delta())
            .unwrap();
        let direct = transition_probability_direct(&a, &b).unwrap();
        dev.push((transition_probability_phase_space(&a, &b, &t, 512).unwrap() - direct).abs());
    }
    c.within("50 random pairs: phase space vs direct", dev, QUADRATURE_TOL);

    let mut dev = Vec::new();
    for _ in 0..10 {
        let a = random_qubit(rng);
        let b = QubitSpec::new(a.m0(), a.m1(), a.alpha(), rng.gen_range(0.0..=PI / 2.0))
            .unwrap()
            .with_delta(a.delta())
            .unwrap();
        let expected = (a.beta() - b.beta()).cos().powi(2);
        dev.push((transition_probability_phase_space(&a, &b, &t, 512).unwrap() - expected).abs());
    }
    c.within("equal phases: phase space vs cos^2(b - b')", dev, QUADRATURE_TOL);

    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let a = loop {
            let a = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
            if a.iter().map(|x: &f64| x * x).sum::<f64>() <= 1.0 {
                break a;
            }
        };
        let rho = BlochDensity::new(1, -2, a).unwrap();
        let purity = density_overlap(&rho, &rho).unwrap();
        let outside = (0.5 - purity).max(purity - 1.0).max(0.0);
        worst = worst.max(outside);
    }
    c.within("1000 Bloch vectors: distance of tr(rho^2) outside [1/2, 1]", [worst], 0.0);
    c
}

fn delta_covariance(rng: &mut ChaCha8Rng) -> Criterion {
    let mut c = Criterion::new(7, "covering-parameter covariance V[d](theta, p) = V[0](theta, p - d)");
    let deltas = [0.1, 0.25, 0.5, 0.9];
    let mut shift = Vec::new();
    for _ in 0..50 {
        let base = random_qudit(rng).with_delta(0.0).unwrap();
        for &d in &deltas {
            let shifted = base.with_delta(d).unwrap();
            for _ in 0..5 {
                let pt = random_point(rng);
                let a = wigner_bilinear_1d(&shifted, pt).unwrap();
                let b = wigner_bilinear_1d(&base, PhasePoint::new(pt.theta, pt.p - d)).unwrap();
                shift.push((a - b).abs());
            }
        }
    }
    c.within("50 states x 4 deltas: kernel-sum shift covariance", shift, CLOSED_TOL);

    let mut profile = Vec::new();
    for _ in 0..20 {
        let spec = random_qubit(rng).with_delta(0.0).unwrap();
        let p = rng.gen_range(-4.0..4.0);
        for &d in &deltas {
            let shifted = spec.with_delta(d).unwrap();
            for k in 0..32 {
                let th = -PI + TAU * k as f64 / 32.0;
                let a = qubit_terms(&shifted, PhasePoint::new(th, p + d)).interference;
                let b = qubit_terms(&spec, PhasePoint::new(th, p)).interference;
                profile.push((a - b).abs());
            }
        }
    }
    for _ in 0..20 {
        let (m0, m1) = random_modes(rng, 4);
        let (n0, n1) = random_modes(rng, 4);
        let modes = TwoQubitModes::new(m0, m1, n0, n1).unwrap();
        let kind = if rng.gen_bool(0.5) { BellFamilyKind::ZeroZeroOneOne } else { BellFamilyKind::OneZeroZeroOne };
        let fam = BellFamily::new(kind, modes, rng.gen_range(0.0..PI), rng.gen_range(0.0..TAU)).unwrap();
        let (p1, p2) = (rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0));
        for &d1 in &deltas {
            let d2 = deltas[(deltas.iter().position(|&x| x == d1).unwrap() + 1) % deltas.len()];
            let shifted = fam.with_deltas(d1, d2).unwrap();
            for k in 0..16 {
                let (t1, t2) = (-PI + TAU * k as f64 / 16.0, 1.0 - 0.3 * k as f64);
                let a = shifted.interference_term(PhasePoint4::new(t1, t2, p1 + d1, p2 + d2));
                let b = fam.interference_term(PhasePoint4::new(t1, t2, p1, p2));
                profile.push((a - b).abs());
                let a = bell_family_wigner(&shifted, PhasePoint4::new(t1, t2, p1 + d1, p2 + d2));
                let b = bell_family_wigner(&fam, PhasePoint4::new(t1, t2, p1, p2));
                profile.push((a - b).abs());
            }
        }
    }
    c.within("interference theta-profiles at shifted momenta", profile, CLOSED_TOL);
    c
}

/// Numerical rank by Gaussian elimination with partial pivoting.
fn rank(mut a: Vec<Vec<f64>>, relative_tol: f64) -> usize {
    let scale = a.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
    let (rows, cols) = (a.len(), a[0].len());
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let pivot = (r..rows).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        if a[pivot][col].abs() <= relative_tol * scale {
            continue;
        }
        a.swap(r, pivot);
        for i in r + 1..rows {
            let f = a[i][col] / a[r][col];
            for j in col..cols {
                a[i][j] -= f * a[r][j];
            }
        }
        r += 1;
    }
    r
}

fn property_suite(rng: &mut ChaCha8Rng) -> Criterion {
    let mut c = Criterion::new(8, "property suite (fixed seed)");
    let mut residue = Vec::new();
    let mut excess_literal = Vec::new();
    let mut excess_provable = Vec::new();
    for _ in 0..200 {
        let s = random_qudit(rng);
        let pt = random_point(rng);
        let z = bilinear_sum_1d(&s, pt);
        residue.push(z.im.abs());
        excess_literal.push((z.re.abs() - 1.0 / TAU).max(0.0));
        excess_provable.push((z.re.abs() - 1.0 / PI).max(0.0));
    }
    for _ in 0..100 {
        let s = random_two_qubit(rng).to_state();
        let pt = random_point4(rng);
        let z = bilinear_sum_2d(&s, pt);
        residue.push(z.im.abs());
        excess_literal.push((z.re.abs() - 1.0 / (TAU * TAU)).max(0.0));
        excess_provable.push((z.re.abs() - 1.0 / (PI * PI)).max(0.0));
    }
    let tilted = QubitSpec::new(1, 0, 0.0, FRAC_PI_3).unwrap();
    excess_literal.push((qubit_wigner(&tilted, PhasePoint::new(0.0, 0.5)) - 1.0 / TAU).max(0.0));

    c.within("reality: imaginary residue of the kernel sum", residue, CLOSED_TOL);
    c.within("boundedness as stated: excess of |V| over (2 pi)^-d", excess_literal, CLOSED_TOL);
    c.expect_failure();
    c.note(
        "the stated (2 pi)^-d bound is false: the tilted (1, 0) qubit has 2 pi V(0, 1/2) = 2/pi + sqrt(3)/2 = 1.503",
    );
    c.within("boundedness, provable form: excess of |V| over pi^-d", excess_provable, CLOSED_TOL);

    let t = Truncation::default();
    let mut norm = Vec::new();
    for _ in 0..20 {
        norm.push((normalization_integral(&random_qubit(rng).to_state(), &t).unwrap() - 1.0).abs());
    }
    for _ in 0..10 {
        norm.push((normalization_integral_2d(&random_two_qubit(rng).to_state(), &t).unwrap() - 1.0).abs());
    }
    c.within("normalization: 20 qubits + 10 2-qubit states", norm, QUADRATURE_TOL);

    let mut fact = Vec::new();
    for _ in 0..20 {
        let (a, b) = (random_qudit(rng), random_qudit(rng));
        let product = TwoModeState::product(&a, &b).unwrap();
        let pt = random_point4(rng);
        let whole = wigner_bilinear_2d(&product, pt).unwrap();
        let parts = wigner_bilinear_1d(&a, pt.first()).unwrap() * wigner_bilinear_1d(&b, pt.second()).unwrap();
        fact.push((whole - parts).abs());

        let q = random_qubit(rng).with_delta(0.0).unwrap();
        let n0 = rng.gen_range(-3..=3);
        let modes = TwoQubitModes::new(q.m0(), q.m1(), n0, n0 + 1).unwrap();
        let (sb, cb) = q.beta().sin_cos();
        let spec = TwoQubitSpec::from_amplitudes(modes, [cb, sb, 0.0, 0.0], [q.alpha(), 0.0, 0.0]).unwrap();
        let v = two_qubit_wigner(&spec, pt);
        fact.push((v - qubit_wigner(&q, pt.first()) * sinc_pi(pt.p2 - n0 as f64) / TAU).abs());
    }
    c.within("factorizability of product states", fact, CLOSED_TOL);

    let mut min_rank = usize::MAX;
    for kind in BellKind::ALL {
        for m0 in [1, 2] {
            // not equispaced: 8 uniform angles alias cos 4θ and sin 4θ onto one vector
            let angles: Vec<f64> = (0..8).map(|k| -3.0 + 0.77 * k as f64).collect();
            let matrix = angles
                .iter()
                .map(|&t1| {
                    angles
                        .iter()
                        .map(|&t2| bell_wigner(kind, m0, PhasePoint4::new(t1, t2, 0.0, 0.0)).unwrap())
                        .collect()
                })
                .collect();
            min_rank = min_rank.min(rank(matrix, 1e-10));
        }
    }
    c.at_least("Bell non-factorizability: smallest 8x8 rank at p = 0", min_rank as f64, 2.0);
    c
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    println!("acceptance suite, seed {SEED}");
    let criteria = vec![
        triple_path_agreement(&mut rng),
        grid_fixtures(),
        bell_exact_values(&mut rng),
        marginals(),
        probability_extraction(),
        overlaps(&mut rng),
        delta_covariance(&mut rng),
        property_suite(&mut rng),
    ];
    let mut surprises = Vec::new();
    for c in &criteria {
        c.report();
        surprises.extend(c.surprises().into_iter().map(|name| format!("[{}] {name}", c.id)));
    }
    let passed = criteria.iter().filter(|c| c.passed()).count();
    println!("{passed}/{} criteria pass", criteria.len());
    if surprises.is_empty() {
        println!("every failing sub-check is a pinned expected failure");
    } else {
        println!("unexpected outcomes:");
        for s in &surprises {
            println!("    {s}");
        }
        std::process::exit(1);
    }
}
