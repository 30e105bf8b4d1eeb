//! Index of a single step walk by the closed form and by winding numbers.

use splitstep::{analyze_spec, AnalyzeOptions, WalkSpec};

fn main() -> splitstep::Result<()> {
    // p = 0.5, a(-∞) = 0.9, a(+∞) = 0
    let walk = WalkSpec::step(0.5, 0.9, 0.0, 0.0)?;
    let report = analyze_spec(&walk, &AnalyzeOptions::default())?;
    println!("fredholm:        {}", report.fredholm);
    println!("case:            {}", report.case);
    println!("formula index:   {:?}", report.witten_formula);
    println!("winding index:   {:?}", report.witten_winding);
    println!("wn(F+), wn(F-):  {:?}, {:?}", report.wn_plus, report.wn_minus);

    // on the boundary |p| = |a(-∞)| the walk is not Fredholm
    let edge = analyze_spec(&WalkSpec::step(0.5, 0.5, 0.0, 0.0)?, &AnalyzeOptions::default())?;
    println!("|p| = |a-|:      fredholm = {} ({})", edge.fredholm, edge.reason);
    Ok(())
}
