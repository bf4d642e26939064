//! Mixed qubits given by a Bloch vector, from the pure states to the maximally
//! mixed one.
//!
//! cargo run --example mixed_states

use aoam_wigner::state::BlochDensity;
use aoam_wigner::{density_wigner, wigner_density_trace, PhasePoint};

fn main() -> aoam_wigner::Result<()> {
    let pt = PhasePoint::new(0.3, 0.0);
    for r in [1.0, 0.75, 0.5, 0.25, 0.0] {
        let rho = BlochDensity::new(1, -1, [r, 0.0, 0.0])?;
        println!(
            "|a| = {r:.2}: V = {:+.6} (trace form {:+.6}), components {}",
            density_wigner(&rho, pt),
            wigner_density_trace(&rho, pt),
            rho.pure_components().len()
        );
    }
    Ok(())
}
