//! Exact kernel and cokernel dimensions for piecewise-constant coins.

use splitstep::transfer::{kernel_by_matching, DEFAULT_MATCH_TOL};
use splitstep::{CoinProfile, CoinSite, ShiftParams, WalkSpec};

fn main() -> splitstep::Result<()> {
    let shift = ShiftParams::from_p(0.5)?;
    let site = |a: f64| CoinSite::from_a(a, 0.0);

    let step = WalkSpec::step(0.5, 0.9, 0.0, 0.0)?;
    let k = kernel_by_matching(&step, DEFAULT_MATCH_TOL)?;
    println!("step: ker {}, coker {}, index {} via {:?}", k.dim_ker, k.dim_coker, k.witten, k.route);
    println!("      decay rates {:?}", k.decay_rates);

    // a pocket of a different phase between two walls
    let coin = CoinProfile::multi_step(site(0.9)?, vec![(-4, site(0.0)?), (3, site(0.95)?)])?;
    let k = kernel_by_matching(&WalkSpec::new(shift, coin)?, DEFAULT_MATCH_TOL)?;
    println!("pocket: ker {}, coker {}, index {}", k.dim_ker, k.dim_coker, k.witten);
    Ok(())
}
