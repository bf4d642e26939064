//! Bell-state Wigner functions: the negative dip of Ψ⁻ and the Bell families
//! with adjustable weight and phase.
//!
//! cargo run --example bell_states

use std::f64::consts::{FRAC_PI_4, PI};

use aoam_wigner::{bell_family_wigner, bell_wigner, BellFamily, BellFamilyKind, BellKind, PhasePoint4, TwoQubitModes};

fn main() -> aoam_wigner::Result<()> {
    let origin = PhasePoint4::new(0.4, 0.4, 0.0, 0.0);
    for kind in BellKind::ALL {
        let v = bell_wigner(kind, 1, origin)?;
        println!("{kind:?}: (2π)²V = {:+.6}", 4.0 * PI * PI * v);
    }

    let modes = TwoQubitModes::antipodal(2)?;
    for angle in [0.0, FRAC_PI_4 / 2.0, FRAC_PI_4] {
        let family = BellFamily::new(BellFamilyKind::OneZeroZeroOne, modes, angle, PI)?;
        let min = (0..64)
            .map(|k| {
                let t = -PI + 2.0 * PI * k as f64 / 64.0;
                bell_family_wigner(&family, PhasePoint4::new(t, -t, 0.0, 0.0))
            })
            .fold(f64::INFINITY, f64::min);
        println!("10-01 family, angle {angle:.4}: min over θ₁ = −θ₂ at p = 0 is {:+.6}", 4.0 * PI * PI * min);
    }
    Ok(())
}
