//! Cross-method index evaluation for a single walk.

use std::fmt;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::model::{CoinSite, ShiftParams, WalkSpec};
use crate::operators::Window;
use crate::spectral::{self, SpectralEstimate};
use crate::symbol::{build_symbol, Side};
use crate::transfer::{self, KernelCount};
use crate::winding::{self, ArgumentWinding, WindingResult};

/// `| |p| - |a| |` at or below this is treated as the degenerate boundary.
pub const FREDHOLM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaCase {
    /// `|a(+∞)| < |p| < |a(-∞)|`, index `sgn p`.
    PlusSgnP,
    /// `|a(-∞)| < |p| < |a(+∞)|`, index `-sgn p`.
    MinusSgnP,
    Zero,
    NotFredholm,
}

impl FormulaCase {
    pub fn tag(self) -> &'static str {
        match self {
            FormulaCase::PlusSgnP => "plus_sgn_p",
            FormulaCase::MinusSgnP => "minus_sgn_p",
            FormulaCase::Zero => "zero",
            FormulaCase::NotFredholm => "not_fredholm",
        }
    }
}

impl fmt::Display for FormulaCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormulaIndex {
    pub fredholm: bool,
    pub index: Option<i32>,
    pub case: FormulaCase,
}

/// Closed-form Witten index from `p` and the coin limits.
pub fn formula_index(shift: &ShiftParams, limit_minus: CoinSite, limit_plus: CoinSite) -> FormulaIndex {
    let p = shift.p();
    let (plus, minus) = (limit_plus.a().abs(), limit_minus.a().abs());
    if (p.abs() - plus).abs() <= FREDHOLM_TOL || (p.abs() - minus).abs() <= FREDHOLM_TOL {
        return FormulaIndex { fredholm: false, index: None, case: FormulaCase::NotFredholm };
    }
    let sgn = if p > 0.0 { 1 } else { -1 };
    let (index, case) = if plus < p.abs() && p.abs() < minus {
        (sgn, FormulaCase::PlusSgnP)
    } else if minus < p.abs() && p.abs() < plus {
        (-sgn, FormulaCase::MinusSgnP)
    } else {
        (0, FormulaCase::Zero)
    };
    FormulaIndex { fredholm: true, index: Some(index), case }
}

/// Which estimators to run beyond the always-on formula and winding routes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyzeOptions {
    pub transfer: bool,
    pub spectral: bool,
    pub samples: usize,
    pub half_width: i64,
    pub eps_cut: f64,
    pub loc_threshold: f64,
    pub match_tol: f64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            transfer: false,
            spectral: false,
            samples: winding::DEFAULT_SAMPLES,
            half_width: spectral::DEFAULT_HALF_WIDTH,
            eps_cut: spectral::DEFAULT_EPS_CUT,
            loc_threshold: spectral::DEFAULT_LOC_THRESHOLD,
            match_tol: transfer::DEFAULT_MATCH_TOL,
        }
    }
}

impl AnalyzeOptions {
    pub fn all() -> Self {
        Self { transfer: true, spectral: true, ..Self::default() }
    }

    /// Parses a comma-separated method list such as `formula,winding,transfer`.
    pub fn with_methods(mut self, list: &str) -> Result<Self> {
        self.transfer = false;
        self.spectral = false;
        for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match name {
                "formula" | "winding" => {}
                "transfer" => self.transfer = true,
                "spectral" => self.spectral = true,
                other => return Err(Error::InvalidInput(format!("unknown method `{other}`"))),
            }
        }
        Ok(self)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Timings {
    pub winding: Duration,
    pub transfer: Option<Duration>,
    pub spectral: Option<Duration>,
}

#[derive(Debug, Clone)]
pub struct Diagnostics {
    pub roots_plus: Option<WindingResult>,
    pub roots_minus: Option<WindingResult>,
    pub argument_plus: Option<ArgumentWinding>,
    pub argument_minus: Option<ArgumentWinding>,
    pub kernel: Option<KernelCount>,
    pub spectral: Option<SpectralEstimate>,
    pub timings: Timings,
}

/// Results of every enabled method for one walk.
#[derive(Debug, Clone)]
pub struct IndexReport {
    pub spec: WalkSpec,
    pub fredholm: bool,
    /// Which side degenerates, if any.
    pub reason: String,
    pub wn_plus: Option<i32>,
    pub wn_minus: Option<i32>,
    pub witten_formula: Option<i32>,
    pub witten_winding: Option<i32>,
    pub witten_transfer: Option<i32>,
    pub witten_spectral: Option<i32>,
    pub case: FormulaCase,
    /// Smallest root-to-circle distance over both symbols.
    pub margin: f64,
    /// Largest rounding residual over the argument-principle and spectral routes.
    pub residual: f64,
    pub disagreements: Vec<String>,
    pub diagnostics: Diagnostics,
}

impl IndexReport {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty()
    }

    /// Turns any disagreement into [`Error::MethodDisagreement`].
    pub fn check(&self) -> Result<()> {
        if self.agrees() {
            Ok(())
        } else {
            Err(Error::MethodDisagreement(self.disagreements.join("; ")))
        }
    }

    /// The agreed index when the walk is Fredholm and every method agrees.
    pub fn index(&self) -> Option<i32> {
        if self.fredholm && self.agrees() {
            self.witten_winding
        } else {
            None
        }
    }
}

fn side_winding(spec: &WalkSpec, side: Side) -> Result<Option<WindingResult>> {
    match winding::winding_by_roots(&build_symbol(spec, side), winding::DEFAULT_CIRCLE_TOL) {
        Ok(w) => Ok(Some(w)),
        Err(Error::ZeroPolynomial) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Runs the spectral estimator, doubling the window once on an ambiguous cut.
pub fn spectral_with_retry(spec: &WalkSpec, options: &AnalyzeOptions) -> Result<SpectralEstimate> {
    let (first, last) = spec.coin.interface_span();
    let mut half = options.half_width.max(3 * first.abs().max(last.abs()) + 3);
    let mut attempt = 0;
    loop {
        let window = Window::symmetric(half)?;
        match spectral::index_by_chirality(spec, &window, options.eps_cut, options.loc_threshold) {
            Err(Error::AmbiguousCut { .. }) if attempt == 0 => {
                attempt += 1;
                half *= 2;
            }
            other => return other,
        }
    }
}

/// Evaluates the index of `spec` by every enabled method and records any
/// disagreement between them. An estimator that fails outright counts as a
/// disagreement; only invalid input is returned as an error.
pub fn analyze_spec(spec: &WalkSpec, options: &AnalyzeOptions) -> Result<IndexReport> {
    let formula = formula_index(&spec.shift, spec.coin.limit_minus(), spec.coin.limit_plus());
    let mut disagreements = Vec::new();
    let mut timings = Timings::default();

    let clock = Instant::now();
    let roots_plus = side_winding(spec, Side::Plus)?;
    let roots_minus = side_winding(spec, Side::Minus)?;
    let side_ok = |w: &Option<WindingResult>| w.as_ref().is_some_and(|w| w.fredholm);
    let winding_fredholm = side_ok(&roots_plus) && side_ok(&roots_minus);
    let mut reason = Vec::new();
    for (side, w) in [("plus", &roots_plus), ("minus", &roots_minus)] {
        match w {
            None => reason.push(format!("{side} symbol vanishes identically")),
            Some(w) if !w.fredholm => reason.push(format!("{side} symbol has a root on the unit circle")),
            _ => {}
        }
    }
    if formula.fredholm != winding_fredholm {
        disagreements.push(format!(
            "formula says fredholm = {}, winding says fredholm = {}",
            formula.fredholm, winding_fredholm
        ));
    }
    let margin = [&roots_plus, &roots_minus]
        .iter()
        .map(|w| w.as_ref().map_or(0.0, |w| w.margin))
        .fold(f64::INFINITY, f64::min);

    let fredholm = formula.fredholm && winding_fredholm;
    let mut report = IndexReport {
        spec: spec.clone(),
        fredholm,
        reason: reason.join("; "),
        wn_plus: None,
        wn_minus: None,
        witten_formula: None,
        witten_winding: None,
        witten_transfer: None,
        witten_spectral: None,
        case: if fredholm { formula.case } else { FormulaCase::NotFredholm },
        margin,
        residual: 0.0,
        disagreements: Vec::new(),
        diagnostics: Diagnostics {
            roots_plus: roots_plus.clone(),
            roots_minus: roots_minus.clone(),
            argument_plus: None,
            argument_minus: None,
            kernel: None,
            spectral: None,
            timings: Timings::default(),
        },
    };
    if !fredholm {
        timings.winding = clock.elapsed();
        report.disagreements = disagreements;
        report.diagnostics.timings = timings;
        return Ok(report);
    }

    let (plus, minus) = (roots_plus.expect("fredholm side"), roots_minus.expect("fredholm side"));
    let mut residual: f64 = 0.0;
    for (side, roots) in [(Side::Plus, &plus), (Side::Minus, &minus)] {
        match winding::winding_by_argument(&build_symbol(spec, side), options.samples) {
            Ok(arg) => {
                if roots.wn_zf != arg.wn {
                    disagreements.push(format!(
                        "{} side: root count {} vs argument principle {}",
                        side.name(),
                        roots.wn_zf,
                        arg.wn
                    ));
                }
                residual = residual.max(arg.residual());
                match side {
                    Side::Plus => report.diagnostics.argument_plus = Some(arg),
                    Side::Minus => report.diagnostics.argument_minus = Some(arg),
                }
            }
            Err(e) => disagreements.push(format!("{} side: argument principle failed: {e}", side.name())),
        }
    }
    timings.winding = clock.elapsed();
    let witten_winding = plus.wn_f - minus.wn_f;
    report.wn_plus = Some(plus.wn_f);
    report.wn_minus = Some(minus.wn_f);
    report.witten_formula = formula.index;
    report.witten_winding = Some(witten_winding);
    if formula.index != Some(witten_winding) {
        disagreements.push(format!("formula {:?} vs winding {witten_winding}", formula.index));
    }

    if options.transfer && spec.coin.is_piecewise_constant() {
        let clock = Instant::now();
        match transfer::kernel_by_matching(spec, options.match_tol) {
            Ok(kernel) => {
                if kernel.witten != witten_winding {
                    disagreements.push(format!("transfer {} vs winding {witten_winding}", kernel.witten));
                }
                report.witten_transfer = Some(kernel.witten);
                report.diagnostics.kernel = Some(kernel);
            }
            Err(e) => disagreements.push(format!("transfer failed: {e}")),
        }
        timings.transfer = Some(clock.elapsed());
    }

    if options.spectral {
        let clock = Instant::now();
        match spectral_with_retry(spec, options) {
            Ok(estimate) => {
                if estimate.estimated_index != witten_winding {
                    disagreements.push(format!("spectral {} vs winding {witten_winding}", estimate.estimated_index));
                }
                residual = residual.max(estimate.residual);
                report.witten_spectral = Some(estimate.estimated_index);
                report.diagnostics.spectral = Some(estimate);
            }
            Err(e) => disagreements.push(format!("spectral failed: {e}")),
        }
        timings.spectral = Some(clock.elapsed());
    }

    report.residual = residual;
    report.disagreements = disagreements;
    report.diagnostics.timings = timings;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CoinProfile;

    fn site(a: f64) -> CoinSite {
        CoinSite::from_a(a, 0.0).unwrap()
    }

    fn formula(p: f64, a_minus: f64, a_plus: f64) -> FormulaIndex {
        formula_index(&ShiftParams::from_p(p).unwrap(), site(a_minus), site(a_plus))
    }

    #[test]
    fn formula_examples() {
        assert_eq!(formula(0.5, 0.9, 0.0), FormulaIndex { fredholm: true, index: Some(1), case: FormulaCase::PlusSgnP });
        assert_eq!(formula(-0.5, 0.9, 0.0), FormulaIndex { fredholm: true, index: Some(-1), case: FormulaCase::PlusSgnP });
        let f = formula(0.5, 0.5, 0.0);
        assert!(!f.fredholm);
        assert_eq!(f.case, FormulaCase::NotFredholm);
        assert_eq!(f.index, None);
        assert_eq!(formula(0.0, 0.3, -0.8), FormulaIndex { fredholm: true, index: Some(0), case: FormulaCase::Zero });
        assert_eq!(formula(0.3, 0.1, 0.8).case, FormulaCase::MinusSgnP);
        assert_eq!(formula(0.3, 0.1, 0.8).index, Some(-1));
    }

    #[test]
    fn formula_is_odd_under_limit_swap() {
        let grid = [-0.9, -0.5, -0.2, 0.0, 0.3, 0.8];
        let a_grid = [-0.95, -0.6, -0.3, 0.0, 0.4, 0.7, 0.9];
        for p in grid {
            for am in a_grid {
                for ap in a_grid {
                    let f = formula(p, am, ap);
                    let g = formula(p, ap, am);
                    assert_eq!(f.fredholm, g.fredholm);
                    if f.fredholm {
                        assert_eq!(f.index.unwrap(), -g.index.unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn analyze_step_all_methods() {
        let spec = WalkSpec::step(0.5, 0.9, 0.0, 0.0).unwrap();
        let r = analyze_spec(&spec, &AnalyzeOptions::all()).unwrap();
        assert!(r.agrees(), "{:?}", r.disagreements);
        assert_eq!(
            (r.witten_formula, r.witten_winding, r.witten_transfer, r.witten_spectral),
            (Some(1), Some(1), Some(1), Some(1))
        );
        assert_eq!((r.wn_plus, r.wn_minus), (Some(1), Some(0)));
        assert_eq!(r.index(), Some(1));
    }

    #[test]
    fn analyze_homogeneous() {
        let spec = WalkSpec::step(-0.3, 0.6, 0.6, 1.0).unwrap();
        let r = analyze_spec(&spec, &AnalyzeOptions::default().with_methods("formula,winding,transfer").unwrap()).unwrap();
        assert!(r.agrees());
        assert_eq!((r.witten_formula, r.witten_winding, r.witten_transfer), (Some(0), Some(0), Some(0)));
        assert_eq!(r.witten_spectral, None);
    }

    #[test]
    fn analyze_degenerate() {
        let spec = WalkSpec::step(0.5, 0.2, -0.5, 0.0).unwrap();
        let r = analyze_spec(&spec, &AnalyzeOptions::all()).unwrap();
        assert!(!r.fredholm);
        assert!(r.agrees());
        assert_eq!(r.case, FormulaCase::NotFredholm);
        assert_eq!((r.wn_plus, r.witten_formula, r.witten_winding), (None, None, None));
        assert!(r.reason.contains("plus"));
    }

    #[test]
    fn analyze_vanishing_symbol() {
        let shift = ShiftParams::from_p(1.0).unwrap();
        let coin = CoinProfile::step(site(0.2), site(1.0), 0);
        let r = analyze_spec(&WalkSpec::new(shift, coin).unwrap(), &AnalyzeOptions::default()).unwrap();
        assert!(!r.fredholm && r.agrees());
        assert!(r.reason.contains("vanishes identically"));
    }

    #[test]
    fn method_list_parsing() {
        let o = AnalyzeOptions::default().with_methods("formula, spectral").unwrap();
        assert!(o.spectral && !o.transfer);
        assert!(AnalyzeOptions::default().with_methods("formula,magic").is_err());
    }

    #[test]
    fn disagreement_is_an_error() {
        let spec = WalkSpec::step(0.5, 0.9, 0.0, 0.0).unwrap();
        let mut r = analyze_spec(&spec, &AnalyzeOptions::default()).unwrap();
        assert!(r.check().is_ok());
        r.disagreements.push("injected".into());
        assert!(matches!(r.check(), Err(Error::MethodDisagreement(_))));
        assert_eq!(r.index(), None);
    }
}
