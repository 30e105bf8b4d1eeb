//! Eigenvectors of U at ±1 localized at the coin interface.

use splitstep::spectral::{edge_state_detector, DEFAULT_HALF_WIDTH, DEFAULT_TOL_EIG};
use splitstep::{WalkSpec, Window};

fn main() -> splitstep::Result<()> {
    let window = Window::symmetric(DEFAULT_HALF_WIDTH)?;
    for (a_minus, a_plus) in [(0.9, 0.0), (0.3, 0.0)] {
        let walk = WalkSpec::step(0.5, a_minus, a_plus, 0.0)?;
        let modes = edge_state_detector(&walk, &window, DEFAULT_TOL_EIG)?;
        println!("a- = {a_minus}, a+ = {a_plus}: {} eigenvalues near ±1", modes.len());
        for m in modes {
            println!("  λ = {:+.9}, |λ ∓ 1| = {:.1e}, central weight {:.3}", m.eigenvalue, m.distance_to_unit(), m.localization);
        }
    }
    Ok(())
}
