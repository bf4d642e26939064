//! Angle and momentum marginals, and OAM probabilities read back from the
//! momentum profile by quadrature.
//!
//! cargo run --release --example marginals

use std::f64::consts::FRAC_PI_3;

use aoam_wigner::marginal::{
    extract_oam_probabilities, marginal_angle, marginal_momentum, oam_probabilities, p_integrated_wigner,
};
use aoam_wigner::{QubitSpec, Truncation};

fn main() -> aoam_wigner::Result<()> {
    let state = QubitSpec::new(1, 0, 0.7, FRAC_PI_3)?.to_state();
    let trunc = Truncation::with_radius(1e3);

    for theta in [-2.0, 0.0, 1.5] {
        println!(
            "θ = {theta:+.1}: |ψ|²/2π = {:.6}, ∫V dp = {:.6}",
            marginal_angle(&state, theta),
            p_integrated_wigner(&state, theta, &trunc)?
        );
    }
    for p in [-0.5, 0.0, 0.5, 1.0] {
        println!("p = {p:+.1}: momentum marginal {:.6}", marginal_momentum(&state, p));
    }

    println!("analytic:  {:?}", oam_probabilities(&state));
    let extracted = extract_oam_probabilities(|p| marginal_momentum(&state, p), 0.0, &[-1, 0, 1, 2], &trunc, 1e-3)?;
    println!("extracted: {extracted:?}");
    Ok(())
}
