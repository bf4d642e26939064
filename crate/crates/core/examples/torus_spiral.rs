//! The curve on the torus along which a Bell-family interference term has a
//! constant value of ϑ₋.
//!
//! cargo run --example torus_spiral

use aoam_wigner::cli::{spiral_table, OutputFormat};
use aoam_wigner::{InterferenceGeometry, TwoQubitModes};

fn main() -> aoam_wigner::Result<()> {
    let geometry = InterferenceGeometry::new(TwoQubitModes::new(0, 2, 0, 3)?, 0.4, -0.3);
    let (s1, s2) = geometry.slopes();
    println!("slopes {s1:.4}, {s2:.4}; closes after ϑ₊ = {:.4}", geometry.closure_period());

    let (vp, vm) = geometry.forward(1.0, -2.0);
    println!("(1, −2) ↦ (ϑ₊, ϑ₋) = ({vp:.4}, {vm:.4}) ↦ {:?}", geometry.invert(vp, vm));

    print!("{}", spiral_table(&geometry, vm, 12, OutputFormat::Csv)?);
    Ok(())
}
