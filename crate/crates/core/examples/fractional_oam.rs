//! A non-integer winding number b = n_b + δ: the Wigner function of the
//! shifted state is the δ = 0 one translated in momentum.
//!
//! cargo run --example fractional_oam

use num_complex::Complex64;

use aoam_wigner::state::decompose_winding;
use aoam_wigner::{wigner_bilinear_1d, GeneralState, PhasePoint};

fn main() -> aoam_wigner::Result<()> {
    let w = decompose_winding(2.3);
    println!("b = 2.3 splits into n_b = {} and δ = {:.2}", w.n_b, w.delta);

    let base =
        GeneralState::normalized([(0, Complex64::new(1.0, 0.0)), (w.n_b as i32, Complex64::new(0.0, 1.0))], 0.0)?;
    let shifted = base.with_delta(w.delta)?;
    for p in [-1.0, 0.0, 1.0, 2.0, 3.0] {
        let a = wigner_bilinear_1d(&shifted, PhasePoint::new(0.5, p))?;
        let b = wigner_bilinear_1d(&base, PhasePoint::new(0.5, p - w.delta))?;
        println!("p = {p:+.1}: V_δ = {a:+.6}, V_0(p − δ) = {b:+.6}");
    }
    println!("⟨L⟩ = {:.3} (shifted), {:.3} (base)", shifted.expectation_l(), base.expectation_l());
    Ok(())
}
