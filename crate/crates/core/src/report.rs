//! Tabular output of [`IndexReport`]s.

use std::io::Write;

use crate::analysis::IndexReport;
use crate::error::Result;

/// Column order of every analysis table.
pub const CSV_COLUMNS: [&str; 19] = [
    "p",
    "q_re",
    "q_im",
    "a_minus",
    "b_minus_re",
    "b_minus_im",
    "a_plus",
    "b_plus_re",
    "b_plus_im",
    "fredholm",
    "wn_plus",
    "wn_minus",
    "witten_formula",
    "witten_winding",
    "witten_transfer",
    "witten_spectral",
    "case",
    "margin",
    "residual",
];

/// 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_opt(v: Option<i32>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

/// One table row in [`CSV_COLUMNS`] order.
pub fn csv_record(r: &IndexReport) -> Vec<String> {
    let (minus, plus) = (r.spec.coin.limit_minus(), r.spec.coin.limit_plus());
    let q = r.spec.shift.q();
    vec![
        fmt_f64(r.spec.shift.p()),
        fmt_f64(q.re),
        fmt_f64(q.im),
        fmt_f64(minus.a()),
        fmt_f64(minus.b().re),
        fmt_f64(minus.b().im),
        fmt_f64(plus.a()),
        fmt_f64(plus.b().re),
        fmt_f64(plus.b().im),
        r.fredholm.to_string(),
        fmt_opt(r.wn_plus),
        fmt_opt(r.wn_minus),
        fmt_opt(r.witten_formula),
        fmt_opt(r.witten_winding),
        fmt_opt(r.witten_transfer),
        fmt_opt(r.witten_spectral),
        r.case.tag().to_string(),
        fmt_f64(r.margin),
        fmt_f64(r.residual),
    ]
}

pub fn write_csv<'a, W: Write>(out: W, reports: impl IntoIterator<Item = &'a IndexReport>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for r in reports {
        w.write_record(csv_record(r))?;
    }
    w.flush()?;
    Ok(())
}
