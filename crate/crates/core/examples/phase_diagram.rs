//! Index over the (p, a+) plane at fixed a-, written as CSV to stdout.

use splitstep::report::write_csv;
use splitstep::sweep::{run_sweep, summarize, SweepGrid};
use splitstep::AnalyzeOptions;

fn main() -> splitstep::Result<()> {
    let grid = SweepGrid {
        p: "-0.9:0.9:0.3".parse()?,
        a_plus: "-0.95:0.95:0.19".parse()?,
        a_minus: 0.9,
        b_phase: 0.0,
    };
    let reports = run_sweep(&grid, &AnalyzeOptions::default().with_methods("formula,winding,transfer")?)?;

    // compact text rendering: rows are p, columns a+
    let width = grid.a_plus.len();
    for row in reports.chunks(width) {
        let cells: String = row
            .iter()
            .map(|r| match r.index() {
                Some(i) => format!("{i:>3}"),
                None => "  .".to_string(),
            })
            .collect();
        println!("p = {:+.1} |{cells}", row[0].spec.shift.p());
    }
    eprintln!("{}", summarize(&reports));
    write_csv(std::io::stdout(), &reports)
}
