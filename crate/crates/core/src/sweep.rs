//! Parameter sweeps over `(p, a(+∞))` at fixed `a(-∞)`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::analysis::{analyze_spec, AnalyzeOptions, IndexReport};
use crate::error::{Error, Result};
use crate::model::{CoinProfile, CoinSite, ShiftParams, WalkSpec};

/// Inclusive arithmetic range `lo:hi:step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRange {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl GridRange {
    pub fn new(lo: f64, hi: f64, step: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && step.is_finite()) || step <= 0.0 || hi < lo {
            return Err(Error::InvalidInput(format!("bad range {lo}:{hi}:{step}")));
        }
        Ok(Self { lo, hi, step })
    }

    pub fn len(&self) -> usize {
        ((self.hi - self.lo) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Grid values, snapped to 1e-12 so accumulated rounding does not leak
    /// into the table (and `-0.0` does not appear).
    pub fn values(&self) -> Vec<f64> {
        (0..self.len())
            .map(|i| {
                let v = self.lo + i as f64 * self.step;
                (v * 1e12).round() / 1e12 + 0.0
            })
            .collect()
    }
}

impl FromStr for GridRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<_> = s.split(':').collect();
        let bad = || Error::InvalidInput(format!("expected lo:hi:step, got `{s}`"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let v = parts.iter().map(|p| p.trim().parse::<f64>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?;
        Self::new(v[0], v[1], v[2])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepGrid {
    pub p: GridRange,
    pub a_plus: GridRange,
    pub a_minus: f64,
    /// Common phase of `b(±∞)`.
    pub b_phase: f64,
}

impl SweepGrid {
    /// Walks in row-major order, `p` outermost. Points where `|p| = 1` or
    /// `|a| > 1` are rejected up front.
    pub fn specs(&self) -> Result<Vec<WalkSpec>> {
        let minus = CoinSite::from_a(self.a_minus, self.b_phase)?;
        let mut out = Vec::with_capacity(self.p.len() * self.a_plus.len());
        for p in self.p.values() {
            let shift = ShiftParams::new(p, Complex64::new((1.0 - p * p).max(0.0).sqrt(), 0.0))?;
            for a in self.a_plus.values() {
                let plus = CoinSite::from_a(a, self.b_phase)?;
                out.push(WalkSpec::new(shift, CoinProfile::step(minus, plus, 0))?);
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub points: usize,
    pub fredholm: usize,
    pub agreeing: usize,
    pub disagreeing: usize,
}

impl fmt::Display for SweepSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} points, {} fredholm, {} agree, {} disagree",
            self.points, self.fredholm, self.agreeing, self.disagreeing
        )
    }
}

pub fn summarize(reports: &[IndexReport]) -> SweepSummary {
    let disagreeing = reports.iter().filter(|r| !r.agrees()).count();
    SweepSummary {
        points: reports.len(),
        fredholm: reports.iter().filter(|r| r.fredholm).count(),
        agreeing: reports.len() - disagreeing,
        disagreeing,
    }
}

/// Analyzes every grid point in parallel; the output keeps grid order.
pub fn run_sweep(grid: &SweepGrid, options: &AnalyzeOptions) -> Result<Vec<IndexReport>> {
    grid.specs()?.par_iter().map(|spec| analyze_spec(spec, options)).collect()
}
