//! Round trip between walks and JSON scenario files, including the schema
//! error for unknown keys.

use splitstep::{CoinProfile, CoinSite, Scenario, ShiftParams, WalkSpec};

fn main() -> splitstep::Result<()> {
    let shift = ShiftParams::new(0.5, num_complex::Complex64::from_polar(0.75f64.sqrt(), 0.4))?;
    let coin = CoinProfile::multi_step(CoinSite::from_a(0.9, 0.0)?, vec![(-2, CoinSite::from_a(0.2, 1.0)?), (3, CoinSite::from_a(0.0, 0.0)?)])?;
    let walk = WalkSpec::new(shift, coin)?;
    let json = Scenario::from_spec(&walk).to_json();
    println!("{json}");
    let back = Scenario::from_json(&json)?.to_spec()?;
    println!("round trip agrees on [-50, 50]: {}", back.coin.agrees_on(&walk.coin, -50, 50, 1e-12));

    let typo = json.replacen("\"kind\"", "\"knid\":0,\"kind\"", 1);
    match Scenario::from_json(&typo) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => println!("unexpectedly accepted"),
    }
    Ok(())
}
