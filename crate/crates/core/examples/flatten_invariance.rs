//! The index depends only on the coin limits: multi-step and tanh coins give
//! the same value as their single-step reductions.

use splitstep::{analyze_spec, AnalyzeOptions, CoinProfile, CoinSite, ShiftParams, WalkSpec};

fn main() -> splitstep::Result<()> {
    let shift = ShiftParams::from_p(0.4)?;
    let site = |a: f64| CoinSite::from_a(a, 0.2);
    let walks = [
        WalkSpec::new(shift, CoinProfile::multi_step(site(0.1)?, vec![(-3, site(0.99)?), (0, site(-0.5)?), (2, site(0.8)?)])?)?,
        WalkSpec::new(shift, CoinProfile::tanh(0.1, 0.8, 6.0, 0.2)?)?,
    ];
    let options = AnalyzeOptions::default().with_methods("formula,winding,transfer")?;
    for walk in walks {
        let full = analyze_spec(&walk, &options)?;
        for cut in [-10, 0, 10] {
            let flat = analyze_spec(&walk.flatten(cut), &options)?;
            println!(
                "{:?}: winding {:?}, transfer {:?}; flattened at {cut:>3}: winding {:?}, transfer {:?}",
                walk.coin.kind(),
                full.witten_winding,
                full.witten_transfer,
                flat.witten_winding,
                flat.witten_transfer
            );
        }
    }
    Ok(())
}
