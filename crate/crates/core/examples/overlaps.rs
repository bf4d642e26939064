//! Transition probabilities from state coefficients and from the phase-space
//! overlap integral of two Wigner functions.
//!
//! cargo run --release --example overlaps

use std::f64::consts::FRAC_PI_3;

use aoam_wigner::marginal::{
    density_overlap, density_overlap_phase_space, transition_probability_direct, transition_probability_phase_space,
};
use aoam_wigner::state::BlochDensity;
use aoam_wigner::{QubitSpec, Truncation};

fn main() -> aoam_wigner::Result<()> {
    let trunc = Truncation::with_radius(1e3);
    let a = QubitSpec::new(2, -1, 0.0, FRAC_PI_3)?;
    let b = QubitSpec::new(2, -1, 1.0, 0.2)?;
    println!(
        "pure:  direct {:.6}, phase space {:.6}",
        transition_probability_direct(&a, &b)?,
        transition_probability_phase_space(&a, &b, &trunc, 512)?
    );

    let rho = BlochDensity::new(2, -1, [0.3, -0.2, 0.5])?;
    let sigma = BlochDensity::new(2, -1, [0.0, 0.6, -0.1])?;
    println!(
        "mixed: direct {:.6}, phase space {:.6}",
        density_overlap(&rho, &sigma)?,
        density_overlap_phase_space(&rho, &sigma, &trunc, 512)?
    );
    println!("purity of ρ: {:.6}", density_overlap(&rho, &rho)?);
    Ok(())
}
