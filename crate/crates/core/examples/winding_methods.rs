//! The two winding routes on the boundary symbols: closed-form roots and the
//! argument principle.

use splitstep::winding::{roots_closed_form, winding_by_argument, winding_by_roots, DEFAULT_CIRCLE_TOL};
use splitstep::{build_symbol, Side, WalkSpec};

fn main() -> splitstep::Result<()> {
    let walk = WalkSpec::step(-0.3, 0.1, 0.8, 0.4)?;
    for side in [Side::Minus, Side::Plus] {
        let sym = build_symbol(&walk, side);
        let roots = roots_closed_form(&sym)?;
        let by_roots = winding_by_roots(&sym, DEFAULT_CIRCLE_TOL)?;
        println!("{} side: c2 = {:.4}, c1 = {:.4}, c0 = {:.4}", side.name(), sym.c2, sym.c1, sym.c0);
        println!("  root moduli {:?}", roots.iter().map(|z| z.norm()).collect::<Vec<_>>());
        println!("  wn(zF) = {}, wn(F) = {}, margin {:.3}", by_roots.wn_zf, by_roots.wn_f, by_roots.margin);
        for samples in [16, 64, 4096] {
            let arg = winding_by_argument(&sym, samples)?;
            println!("  argument principle, {samples:>4} samples: raw {:.12}, wn {}", arg.raw, arg.wn);
        }
    }
    Ok(())
}
