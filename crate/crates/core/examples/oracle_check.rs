//! Compares the closed forms with the kernel sum and the direct quadrature of
//! the defining integral, then runs the same self-check as `verify`.
//!
//! cargo run --release --example oracle_check

use aoam_wigner::cli::verify;
use aoam_wigner::{
    bell_state, bell_wigner, oracle_wigner_1d, oracle_wigner_2d, qubit_wigner, verify_sinc_identities,
    wigner_bilinear_1d, BellKind, PhasePoint, PhasePoint4, QubitSpec, DEFAULT_ORACLE_NODES,
};

fn main() -> aoam_wigner::Result<()> {
    let q = QubitSpec::new(3, -1, 0.8, 0.5)?.with_delta(0.25)?;
    let pt = PhasePoint::new(1.1, 0.7);
    let oracle = oracle_wigner_1d(&q.to_state(), pt, DEFAULT_ORACLE_NODES)?;
    println!("qubit closed   {:+.15}", qubit_wigner(&q, pt));
    println!("qubit bilinear {:+.15}", wigner_bilinear_1d(&q.to_state(), pt)?);
    println!("qubit oracle   {:+.15} (refinement change {:.1e})", oracle.value, oracle.error_estimate);

    let pt = PhasePoint4::new(0.3, -0.9, 0.5, 0.0);
    let oracle = oracle_wigner_2d(&bell_state(BellKind::PhiMinus, 2)?, pt, 256)?;
    println!("Φ⁻ closed {:+.15}, oracle {:+.15}", bell_wigner(BellKind::PhiMinus, 2, pt)?, oracle.value);

    let report = verify_sinc_identities(1e3)?;
    println!("sinc identities: max deviation {:.2e}, passed {}", report.max_deviation, report.passed);
    println!("full self-check passed: {}", verify(1e3, 0)?.passed);
    Ok(())
}
