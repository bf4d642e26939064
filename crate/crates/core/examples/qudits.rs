//! States with more than two modes, evaluated through the kernel double sum.
//!
//! cargo run --example qudits

use std::f64::consts::PI;

use num_complex::Complex64;

use aoam_wigner::marginal::oam_probabilities;
use aoam_wigner::state::uniform_qudit;
use aoam_wigner::{wigner_bilinear_1d, GeneralState, PhasePoint};

fn main() -> aoam_wigner::Result<()> {
    let uniform = uniform_qudit(&[-2, -1, 0, 1, 2], 0.0)?;
    let min = (0..200)
        .map(|k| wigner_bilinear_1d(&uniform, PhasePoint::new(-PI + 2.0 * PI * k as f64 / 200.0, 0.5)))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    println!("uniform 5-mode state: min V at p = ½ is {min:+.6}");

    let state = GeneralState::normalized(
        [(-3, Complex64::new(1.0, 0.0)), (0, Complex64::new(0.0, 2.0)), (4, Complex64::new(-1.0, 1.0))],
        0.0,
    )?;
    println!("probabilities {:?}", oam_probabilities(&state));
    for p in [-3.0, 0.0, 0.5, 4.0] {
        println!("V(0, {p:+.1}) = {:+.6}", wigner_bilinear_1d(&state, PhasePoint::new(0.0, p))?);
    }
    Ok(())
}
