//! Seeded self-checks that cross-validate every index route.
//!
//! Each suite draws from its own ChaCha stream keyed by the seed and the
//! suite id, so a suite can be rerun alone and reproduces the same cases.

use std::f64::consts::PI;
use std::fmt;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::analysis::formula_index;
use crate::error::Result;
use crate::model::{CoinProfile, CoinSite, ShiftParams, WalkSpec};
use crate::operators::{assemble_piecewise, assemble_q_plus, assemble_toeplitz, TrigPoly, Variant, Window};
use crate::scenario::Scenario;
use crate::spectral::{self, near_kernel_svd};
use crate::symbol::{build_symbol, Side};
use crate::transfer;
use crate::winding::{self, WindingResult};

/// Number of cases per suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteCounts {
    /// Cap on the deterministic grid of suite 1.
    pub grid: usize,
    pub winding_draws: usize,
    pub root_draws: usize,
    pub transfer_single: usize,
    pub transfer_multi: usize,
    /// Shared by the chirality and edge-state suites.
    pub spectral_specs: usize,
    pub toeplitz_symbols: usize,
    pub finite_rank: usize,
}

impl SuiteCounts {
    pub fn full() -> Self {
        Self {
            grid: usize::MAX,
            winding_draws: 1000,
            root_draws: 500,
            transfer_single: 200,
            transfer_multi: 50,
            spectral_specs: 30,
            toeplitz_symbols: 20,
            finite_rank: 50,
        }
    }

    pub fn quick() -> Self {
        Self {
            grid: usize::MAX,
            winding_draws: 100,
            root_draws: 100,
            transfer_single: 40,
            transfer_multi: 10,
            spectral_specs: 6,
            toeplitz_symbols: 10,
            finite_rank: 10,
        }
    }

    /// The same count for every suite.
    pub fn uniform(n: usize) -> Self {
        Self {
            grid: n,
            winding_draws: n,
            root_draws: n,
            transfer_single: n,
            transfer_multi: n,
            spectral_specs: n,
            toeplitz_symbols: n,
            finite_rank: n,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub counts: SuiteCounts,
}

impl VerifyConfig {
    pub fn new(seed: u64, quick: bool) -> Self {
        Self { seed, counts: if quick { SuiteCounts::quick() } else { SuiteCounts::full() } }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    FormulaGrid = 1,
    WindingAgreement = 2,
    RootFormula = 3,
    TransferExactness = 4,
    SpectralChirality = 5,
    ToeplitzFiniteSection = 6,
    EdgeStates = 7,
    FiniteRank = 8,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::FormulaGrid,
        Suite::WindingAgreement,
        Suite::RootFormula,
        Suite::TransferExactness,
        Suite::SpectralChirality,
        Suite::ToeplitzFiniteSection,
        Suite::EdgeStates,
        Suite::FiniteRank,
    ];

    pub fn id(self) -> u8 {
        self as u8
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::FormulaGrid => "formula vs winding grid",
            Suite::WindingAgreement => "roots vs argument principle",
            Suite::RootFormula => "closed-form roots",
            Suite::TransferExactness => "transfer-matrix kernel",
            Suite::SpectralChirality => "spectral chirality",
            Suite::ToeplitzFiniteSection => "Toeplitz finite sections",
            Suite::EdgeStates => "edge states",
            Suite::FiniteRank => "finite-rank differences",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub message: String,
    /// Scenario JSON of the failing walk, when the case is a walk.
    pub scenario: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub checked: usize,
    pub passed: usize,
    pub elapsed: Duration,
    pub failure: Option<Failure>,
}

impl SuiteOutcome {
    pub fn ok(&self) -> bool {
        self.passed == self.checked && self.failure.is_none()
    }

    pub fn vacuous(&self) -> bool {
        self.checked == 0
    }
}

/// One line per suite, without timing so that reruns are byte-identical.
impl fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.ok() { "PASS" } else { "FAIL" };
        write!(f, "suite {} ({}): {status} {}/{}", self.suite.id(), self.suite.name(), self.passed, self.checked)?;
        if self.vacuous() {
            write!(f, " (warning: no cases, vacuous pass)")?;
        }
        Ok(())
    }
}

/// Tally with first-failure capture.
struct Tally {
    checked: usize,
    passed: usize,
    failure: Option<Failure>,
}

impl Tally {
    fn new() -> Self {
        Self { checked: 0, passed: 0, failure: None }
    }

    fn record(&mut self, ok: bool, message: impl FnOnce() -> String, spec: Option<&WalkSpec>) {
        self.checked += 1;
        if ok {
            self.passed += 1;
        } else if self.failure.is_none() {
            self.failure = Some(Failure { message: message(), scenario: spec.map(|s| Scenario::from_spec(s).to_json()) });
        }
    }

    /// Like [`Tally::record`] for checks that may error.
    fn record_result(&mut self, outcome: Result<std::result::Result<(), String>>, spec: Option<&WalkSpec>) {
        match outcome {
            Ok(Ok(())) => self.record(true, String::new, spec),
            Ok(Err(msg)) => self.record(false, || msg, spec),
            Err(e) => self.record(false, || format!("error: {e}"), spec),
        }
    }

    fn finish(self, suite: Suite, start: Instant) -> SuiteOutcome {
        SuiteOutcome { suite, checked: self.checked, passed: self.passed, elapsed: start.elapsed(), failure: self.failure }
    }
}

fn rng_for(seed: u64, suite: Suite) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(suite.id() as u64);
    rng
}

fn shift_with_phase(p: f64, theta: f64) -> ShiftParams {
    ShiftParams::new(p, Complex64::from_polar((1.0 - p * p).sqrt(), theta)).expect("on the sphere")
}

fn random_shift(rng: &mut ChaCha8Rng, p_max: f64) -> ShiftParams {
    shift_with_phase(rng.gen_range(-p_max..=p_max), rng.gen_range(0.0..2.0 * PI))
}

fn random_site(rng: &mut ChaCha8Rng, a_max: f64) -> CoinSite {
    CoinSite::from_a(rng.gen_range(-a_max..=a_max), rng.gen_range(0.0..2.0 * PI)).expect("|a| <= 1")
}

fn roots(spec: &WalkSpec, side: Side) -> Result<WindingResult> {
    winding::winding_by_roots(&build_symbol(spec, side), winding::DEFAULT_CIRCLE_TOL)
}

fn min_margin(spec: &WalkSpec) -> f64 {
    [Side::Plus, Side::Minus].iter().map(|&s| roots(spec, s).map_or(0.0, |w| w.margin)).fold(f64::INFINITY, f64::min)
}

/// Smallest `|log|z||` over the roots of both limit symbols.
fn min_log_margin(spec: &WalkSpec) -> f64 {
    [Side::Plus, Side::Minus]
        .iter()
        .map(|&s| match winding::roots_closed_form(&build_symbol(spec, s)) {
            Ok(r) => r.iter().map(|z| z.norm().ln().abs()).fold(f64::INFINITY, f64::min),
            Err(_) => 0.0,
        })
        .fold(f64::INFINITY, f64::min)
}

fn witten_by_roots(spec: &WalkSpec) -> Result<i32> {
    Ok(roots(spec, Side::Plus)?.wn_f - roots(spec, Side::Minus)?.wn_f)
}

/// Grid points of suite 1, in a fixed order.
pub fn formula_grid() -> Vec<WalkSpec> {
    let ps: [f64; 6] = [-0.9, -0.5, -0.2, 0.0, 0.3, 0.8];
    let a_values: [f64; 7] = [-0.95, -0.6, -0.3, 0.0, 0.4, 0.7, 0.9];
    let phases = [0.0, PI / 3.0];
    let mut out = Vec::new();
    for p in ps {
        for am in a_values {
            for ap in a_values {
                if (p.abs() - am.abs()).abs() < 0.02 || (p.abs() - ap.abs()).abs() < 0.02 {
                    continue;
                }
                for phase in phases {
                    let coin = CoinProfile::step(
                        CoinSite::from_a(am, phase).expect("grid"),
                        CoinSite::from_a(ap, phase).expect("grid"),
                        0,
                    );
                    out.push(WalkSpec::new(ShiftParams::from_p(p).expect("grid"), coin).expect("grid"));
                }
            }
        }
    }
    out
}

fn suite_formula_grid(counts: &SuiteCounts) -> SuiteOutcome {
    let start = Instant::now();
    let mut tally = Tally::new();
    for spec in formula_grid().iter().take(counts.grid) {
        let f = formula_index(&spec.shift, spec.coin.limit_minus(), spec.coin.limit_plus());
        let outcome = witten_by_roots(spec).map(|w| {
            if f.index == Some(w) {
                Ok(())
            } else {
                Err(format!("formula {:?} vs winding {w}", f.index))
            }
        });
        tally.record_result(outcome, Some(spec));
    }
    tally.finish(Suite::FormulaGrid, start)
}

fn suite_winding_agreement(seed: u64, counts: &SuiteCounts) -> SuiteOutcome {
    let start = Instant::now();
    let mut rng = rng_for(seed, Suite::WindingAgreement);
    let mut tally = Tally::new();
    let mut drawn = 0;
    while drawn < counts.winding_draws {
        let spec = WalkSpec::new(
            random_shift(&mut rng, 0.99),
            CoinProfile::step(random_site(&mut rng, 1.0), random_site(&mut rng, 1.0), 0),
        )
        .expect("valid draw");
        if min_margin(&spec) < 0.01 {
            continue;
        }
        drawn += 1;
        let check = || -> Result<std::result::Result<(), String>> {
            for side in [Side::Plus, Side::Minus] {
                let sym = build_symbol(&spec, side);
                let by_roots = winding::winding_by_roots(&sym, winding::DEFAULT_CIRCLE_TOL)?;
                let by_arg = winding::winding_by_argument(&sym, winding::DEFAULT_SAMPLES)?;
                if by_roots.wn_zf != by_arg.wn || by_arg.residual() >= 1e-4 {
                    return Ok(Err(format!(
                        "{} side: roots {} vs argument {} (raw {})",
                        side.name(),
                        by_roots.wn_zf,
                        by_arg.wn,
                        by_arg.raw
                    )));
                }
            }
            Ok(Ok(()))
        };
        tally.record_result(check(), Some(&spec));
    }
    tally.finish(Suite::WindingAgreement, start)
}

/// Roots of `zF` written out from the coin and shift scalars directly.
fn explicit_roots(shift: &ShiftParams, limit: CoinSite) -> [Complex64; 2] {
    let denom = (1.0 + shift.p()) * shift.phase() * limit.b();
    [shift.q_abs() * (1.0 - limit.a()) / denom, -shift.q_abs() * (1.0 + limit.a()) / denom]
}

fn suite_root_formula(seed: u64, counts: &SuiteCounts) -> SuiteOutcome {
    let start = Instant::now();
    let mut rng = rng_for(seed, Suite::RootFormula);
    let mut tally = Tally::new();
    for _ in 0..counts.root_draws {
        let spec = WalkSpec::new(
            random_shift(&mut rng, 0.99),
            CoinProfile::step(random_site(&mut rng, 0.99), random_site(&mut rng, 0.99), 0),
        )
        .expect("valid draw");
        let check = || -> Result<std::result::Result<(), String>> {
            for (side, limit) in [(Side::Plus, spec.coin.limit_plus()), (Side::Minus, spec.coin.limit_minus())] {
                let got = winding::roots_closed_form(&build_symbol(&spec, side))?;
                let want = explicit_roots(&spec.shift, limit);
                if got.len() != 2 {
                    return Ok(Err(format!("{} side: {} roots", side.name(), got.len())));
                }
                let rel = |x: Complex64, y: Complex64| (x - y).norm() / y.norm();
                let err = (rel(got[0], want[0]).max(rel(got[1], want[1])))
                    .min(rel(got[0], want[1]).max(rel(got[1], want[0])));
                if err.is_nan() || err > 1e-9 {
                    return Ok(Err(format!("{} side: relative error {err:e}", side.name())));
                }
            }
            Ok(Ok(()))
        };
        tally.record_result(check(), Some(&spec));
    }
    tally.finish(Suite::RootFormula, start)
}

/// Random piecewise-constant walk whose limit symbols keep their roots at
/// least `0.02` away from the unit circle.
fn transfer_spec(rng: &mut ChaCha8Rng, breakpoints: usize) -> WalkSpec {
    loop {
        let shift = random_shift(rng, 0.95);
        let minus = random_site(rng, 1.0);
        let mut xs: Vec<i64> = Vec::new();
        while xs.len() < breakpoints {
            let x = rng.gen_range(-6..=6);
            if !xs.contains(&x) {
                xs.push(x);
            }
        }
        xs.sort_unstable();
        let bps: Vec<_> = xs.into_iter().map(|x| (x, random_site(rng, 1.0))).collect();
        let coin = if breakpoints == 1 {
            CoinProfile::step(minus, bps[0].1, bps[0].0)
        } else {
            CoinProfile::multi_step(minus, bps).expect("sorted distinct breakpoints")
        };
        let spec = WalkSpec::new(shift, coin).expect("valid draw");
        if min_margin(&spec) >= 0.02 {
            return spec;
        }
    }
}

fn suite_transfer(seed: u64, counts: &SuiteCounts) -> SuiteOutcome {
    let start = Instant::now();
    let mut rng = rng_for(seed, Suite::TransferExactness);
    let mut tally = Tally::new();
    let total = counts.transfer_single + counts.transfer_multi;
    for i in 0..total {
        let breakpoints = if i < counts.transfer_single { 1 } else { rng.gen_range(2..=3) };
        let spec = transfer_spec(&mut rng, breakpoints);
        let outcome = transfer::kernel_by_matching(&spec, transfer::DEFAULT_MATCH_TOL).and_then(|k| {
            let w = witten_by_roots(&spec)?;
            Ok(if k.witten == w {
                Ok(())
            } else {
                Err(format!("transfer {} (ker {}, coker {}) vs winding {w}", k.witten, k.dim_ker, k.dim_coker))
            })
        });
        tally.record_result(outcome, Some(&spec));
    }
    tally.finish(Suite::TransferExactness, start)
}

/// Walks for the spectral suites: targets cycle through index -1, 0, +1 and
/// alternate between step and tanh coins. Root moduli stay at least
/// `e^{0.2}` away from 1 so zero modes decay well inside the window.
pub fn spectral_specs(seed: u64, n: usize) -> Vec<WalkSpec> {
    let mut rng = rng_for(seed, Suite::SpectralChirality);
    (0..n)
        .map(|i| {
            let target = [-1, 0, 1][i % 3];
            let tanh = (i / 3) % 2 == 1;
            loop {
                let shift = random_shift(&mut rng, 0.9);
                let coin = if tanh {
                    let (am, ap) = (rng.gen_range(-0.95..=0.95), rng.gen_range(-0.95..=0.95));
                    CoinProfile::tanh(am, ap, rng.gen_range(1.0..=8.0), rng.gen_range(0.0..2.0 * PI))
                        .expect("valid tanh")
                } else {
                    CoinProfile::step(random_site(&mut rng, 0.95), random_site(&mut rng, 0.95), 0)
                };
                let spec = WalkSpec::new(shift, coin).expect("valid draw");
                let f = formula_index(&spec.shift, spec.coin.limit_minus(), spec.coin.limit_plus());
                if f.index == Some(target) && min_log_margin(&spec) >= 0.2 {
                    break spec;
                }
            }
        })
        .collect()
}

fn suite_spectral(seed: u64, counts: &SuiteCounts) -> SuiteOutcome {
    let start = Instant::now();
    let mut tally = Tally::new();
    let window = Window::symmetric(spectral::DEFAULT_HALF_WIDTH).expect("window");
    for spec in spectral_specs(seed, counts.spectral_specs) {
        let outcome = spectral::index_by_chirality(
            &spec,
            &window,
            spectral::DEFAULT_EPS_CUT,
            spectral::DEFAULT_LOC_THRESHOLD,
        )
        .and_then(|est| {
            let w = witten_by_roots(&spec)?;
            Ok(if est.estimated_index == w && est.residual < 0.05 {
                Ok(())
            } else {
                Err(format!("chirality {} (residual {:.3e}) vs winding {w}", est.estimated_index, est.residual))
            })
        });
        tally.record_result(outcome, Some(&spec));
    }
    tally.finish(Suite::SpectralChirality, start)
}

fn suite_edge_states(seed: u64, counts: &SuiteCounts) -> SuiteOutcome {
    let start = Instant::now();
    let mut tally = Tally::new();
    let window = Window::symmetric(spectral::DEFAULT_HALF_WIDTH).expect("window");
    for spec in spectral_specs(seed, counts.spectral_specs) {
        match witten_by_roots(&spec) {
            Ok(0) => continue,
            Ok(_) => {}
            Err(e) => {
                tally.record(false, || format!("error: {e}"), Some(&spec));
                continue;
            }
        }
        let outcome = spectral::edge_state_detector(&spec, &window, spectral::DEFAULT_TOL_EIG).map(|modes| {
            let hit = modes.iter().any(|m| m.distance_to_unit() < 1e-6 && m.localization > 0.9);
            if hit {
                Ok(())
            } else {
                let best = modes.iter().map(|m| m.localization).fold(0.0, f64::max);
                Err(format!("{} modes near ±1, best localization {best:.3}", modes.len()))
            }
        });
        tally.record_result(outcome, Some(&spec));
    }
    tally.finish(Suite::EdgeStates, start)
}

/// `(k, symbol)` pairs: `h(z) = c z^s Π(z - r)` with two roots and winding
/// `k = s + #{|r| < 1}`, roots at least `0.1` from the circle.
pub fn toeplitz_symbols(seed: u64, n: usize) -> Vec<(i32, TrigPoly)> {
    let mut rng = rng_for(seed, Suite::ToeplitzFiniteSection);
    (0..n)
        .map(|i| {
            let k = [-2, -1, 0, 1, 2][i % 5];
            // admissible shifts s with 0 <= k - s <= 2
            let shifts: Vec<i32> = (-2..=0).filter(|s| (0..=2).contains(&(k - s))).collect();
            let s = shifts[rng.gen_range(0..shifts.len())];
            let inside = (k - s) as usize;
            let roots: Vec<Complex64> = (0..2)
                .map(|j| {
                    let r = if j < inside { rng.gen_range(0.0..=0.9) } else { rng.gen_range(1.1..=3.0) };
                    Complex64::from_polar(r, rng.gen_range(0.0..2.0 * PI))
                })
                .collect();
            let scale = Complex64::from_polar(rng.gen_range(0.5..=2.0), rng.gen_range(0.0..2.0 * PI));
            (k, TrigPoly::from_roots(scale, s, &roots))
        })
        .collect()
}

fn suite_toeplitz(seed: u64, counts: &SuiteCounts) -> SuiteOutcome {
    const N: usize = 400;
    let start = Instant::now();
    let mut tally = Tally::new();
    for (k, h) in toeplitz_symbols(seed, counts.toeplitz_symbols) {
        let m = k.unsigned_abs() as usize;
        let outcome = assemble_toeplitz(&h, N).and_then(|t| near_kernel_svd(&t, m + 1)).map(|s| {
            let tiny = s.iter().filter(|v| **v < 1e-6).count();
            let gap_ok = m == 0 || s[m] >= 1e3 * s[m - 1];
            if tiny == m && gap_ok {
                Ok(())
            } else {
                Err(format!("winding {k}: smallest singular values {s:?} for symbol {:?}", h.terms().collect::<Vec<_>>()))
            }
        });
        tally.record_result(outcome, None);
    }
    tally.finish(Suite::ToeplitzFiniteSection, start)
}

fn random_trig(rng: &mut ChaCha8Rng) -> TrigPoly {
    let m = rng.gen_range(1..=3);
    TrigPoly::new((-m..=m).map(|j| (j, Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))))
}

fn suite_finite_rank(seed: u64, counts: &SuiteCounts) -> SuiteOutcome {
    let start = Instant::now();
    let mut rng = rng_for(seed, Suite::FiniteRank);
    let mut tally = Tally::new();
    let zero = Complex64::new(0.0, 0.0);
    for _ in 0..counts.finite_rank {
        let (f, g) = (random_trig(&mut rng), random_trig(&mut rng));
        let m = f.degree().max(g.degree()) as i64;
        let w = Window::open(-m - 8, m + 8).expect("window");
        let outcome = (|| -> Result<std::result::Result<(), String>> {
            let a = assemble_piecewise(&f, &g, &w, Variant::A)?;
            let b = assemble_piecewise(&f, &g, &w, Variant::B)?;
            let diff = &a.data - &b.data;
            for (col, x) in w.site_iter().enumerate() {
                if x.abs() > m && diff.column(col).iter().any(|v| *v != zero) {
                    return Ok(Err(format!("A - B has a nonzero entry in column x = {x} (M = {m})")));
                }
            }
            Ok(Ok(()))
        })();
        tally.record_result(outcome, None);

        let spec = WalkSpec::new(
            random_shift(&mut rng, 0.99),
            CoinProfile::step(random_site(&mut rng, 1.0), random_site(&mut rng, 1.0), 0),
        )
        .expect("valid draw");
        let w = Window::open(-10, 10).expect("window");
        let outcome = (|| -> Result<std::result::Result<(), String>> {
            let q = assemble_q_plus(&spec, &w);
            let f_minus = TrigPoly::from_symbol(&build_symbol(&spec, Side::Minus));
            let f_plus = TrigPoly::from_symbol(&build_symbol(&spec, Side::Plus));
            let a = assemble_piecewise(&f_minus, &f_plus, &w, Variant::A)?;
            let diff = &q.data - &a.data;
            for ((r, c), v) in diff.indexed_iter() {
                let (y, x) = (w.site_at(r), w.site_at(c));
                if *v != zero && (x != -1 || (y + 1).abs() > 1) {
                    return Ok(Err(format!("Q+ - A(F-, F+) has entry {v} at row {y}, column {x}")));
                }
            }
            Ok(Ok(()))
        })();
        tally.record_result(outcome, Some(&spec));
    }
    tally.finish(Suite::FiniteRank, start)
}

pub fn run_suite(suite: Suite, config: &VerifyConfig) -> SuiteOutcome {
    let (seed, counts) = (config.seed, &config.counts);
    match suite {
        Suite::FormulaGrid => suite_formula_grid(counts),
        Suite::WindingAgreement => suite_winding_agreement(seed, counts),
        Suite::RootFormula => suite_root_formula(seed, counts),
        Suite::TransferExactness => suite_transfer(seed, counts),
        Suite::SpectralChirality => suite_spectral(seed, counts),
        Suite::ToeplitzFiniteSection => suite_toeplitz(seed, counts),
        Suite::EdgeStates => suite_edge_states(seed, counts),
        Suite::FiniteRank => suite_finite_rank(seed, counts),
    }
}

pub fn verify(config: &VerifyConfig) -> Vec<SuiteOutcome> {
    Suite::ALL.iter().map(|&s| run_suite(s, config)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> VerifyConfig {
        VerifyConfig {
            seed: 7,
            counts: SuiteCounts {
                grid: 40,
                winding_draws: 20,
                root_draws: 20,
                transfer_single: 10,
                transfer_multi: 5,
                spectral_specs: 0,
                toeplitz_symbols: 5,
                finite_rank: 5,
            },
        }
    }

    #[test]
    fn cheap_suites_pass() {
        for suite in [
            Suite::FormulaGrid,
            Suite::WindingAgreement,
            Suite::RootFormula,
            Suite::TransferExactness,
            Suite::ToeplitzFiniteSection,
            Suite::FiniteRank,
        ] {
            let out = run_suite(suite, &tiny());
            assert!(out.ok(), "{out}: {:?}", out.failure);
            assert!(out.checked > 0);
        }
    }

    #[test]
    fn zero_counts_are_vacuous() {
        let out = run_suite(Suite::SpectralChirality, &tiny());
        assert!(out.ok() && out.vacuous());
        assert!(out.to_string().contains("vacuous"));
    }

    #[test]
    fn draws_are_deterministic() {
        assert_eq!(spectral_specs(3, 4), spectral_specs(3, 4));
        assert_ne!(spectral_specs(3, 4), spectral_specs(4, 4));
        let a = toeplitz_symbols(3, 5);
        let b = toeplitz_symbols(3, 5);
        assert!(a.iter().zip(&b).all(|(x, y)| x == y));
        let ks: Vec<_> = a.iter().map(|(k, _)| *k).collect();
        assert_eq!(ks, [-2, -1, 0, 1, 2]);
    }

    #[test]
    fn spectral_targets_cycle() {
        for (i, spec) in spectral_specs(11, 6).iter().enumerate() {
            let f = formula_index(&spec.shift, spec.coin.limit_minus(), spec.coin.limit_plus());
            assert_eq!(f.index, Some([-1, 0, 1][i % 3]));
            assert_eq!(spec.coin.is_piecewise_constant(), (i / 3) % 2 == 0);
        }
    }

    #[test]
    fn grid_excludes_near_degenerate_points() {
        let grid = formula_grid();
        assert!(grid.iter().all(|s| {
            let p = s.shift.p().abs();
            (p - s.coin.limit_minus().a().abs()).abs() >= 0.02 && (p - s.coin.limit_plus().a().abs()).abs() >= 0.02
        }));
        assert!(grid.len() > 400);
    }

    #[test]
    fn explicit_roots_match_example() {
        let spec = WalkSpec::step(0.5, 0.9, 0.0, 0.0).unwrap();
        let z = explicit_roots(&spec.shift, spec.coin.limit_plus());
        let q = (0.75f64).sqrt();
        assert!((z[0] - Complex64::new(q / 1.5, 0.0)).norm() < 1e-15);
        assert!((z[1] + Complex64::new(q / 1.5, 0.0)).norm() < 1e-15);
    }
}
