//! Prints 2π·V(θ, p) for the balanced (1, −1) and tilted (1, 0) qubits on a coarse grid.
//!
//! cargo run --example qubit_grids

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};

use aoam_wigner::cli::{self, EvalPath, PhaseGrid, Scale, StateInput};
use aoam_wigner::{qubit_wigner, PhasePoint, QubitSpec};

fn main() -> aoam_wigner::Result<()> {
    let balanced = QubitSpec::new(1, -1, 0.0, FRAC_PI_4)?;
    let tilted = QubitSpec::new(1, 0, 0.0, FRAC_PI_3)?;
    for (name, q) in [("balanced ±1", balanced), ("tilted 1/0", tilted)] {
        println!("{name}: 2πV(0, 0) = {:.6}", 2.0 * std::f64::consts::PI * qubit_wigner(&q, PhasePoint::new(0.0, 0.0)));
        println!("{name}: 2πV(0, ½) = {:.6}", 2.0 * std::f64::consts::PI * qubit_wigner(&q, PhasePoint::new(0.0, 0.5)));
    }

    // the same grid the CLI would write with `eval --scale two-pi-d`
    let state = StateInput::parse_qubit("1,-1,0,pi/4")?;
    let grid = PhaseGrid::parse("theta=-pi:pi:8,p=-2:2:5", state.phase_axes())?;
    let result = cli::eval_grid(&state, &grid, EvalPath::Closed, Scale::TwoPiD, 0)?;
    print!("{}", result.to_csv());
    Ok(())
}
