//! Spectral estimate: chirality of the localized zero modes of a finite
//! section of the supercharge.

use splitstep::spectral::{index_by_chirality, DEFAULT_EPS_CUT, DEFAULT_HALF_WIDTH, DEFAULT_LOC_THRESHOLD};
use splitstep::{CoinProfile, ShiftParams, WalkSpec, Window};

fn main() -> splitstep::Result<()> {
    let window = Window::symmetric(DEFAULT_HALF_WIDTH)?;
    let walks = [
        ("step", WalkSpec::step(0.5, 0.9, 0.0, 0.0)?),
        ("tanh", WalkSpec::new(ShiftParams::from_p(-0.5)?, CoinProfile::tanh(0.9, 0.0, 5.0, 0.3)?)?),
    ];
    for (name, walk) in walks {
        let est = index_by_chirality(&walk, &window, DEFAULT_EPS_CUT, DEFAULT_LOC_THRESHOLD)?;
        println!("{name}: index {} (residual {:.1e})", est.estimated_index, est.residual);
        println!("  smallest |λ|: {:?}", &est.near_zero_values[..4]);
        for m in &est.modes {
            println!("  mode: central weight {:.3}, chirality {:+.3}, selected {}", m.weight, m.chirality, m.selected);
        }
    }
    Ok(())
}
