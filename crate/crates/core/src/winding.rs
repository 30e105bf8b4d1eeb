//! Winding numbers of the boundary symbols.
//!
//! Two independent routes: counting roots of `z·F` inside the open unit disc
//! (authoritative), and summing unwrapped phase increments of `z·F` around
//! the circle (cross-check). `wn(F) = wn(z·F) - 1`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{CoinSite, ShiftParams};
use crate::symbol::SymbolPoly;

pub const DEFAULT_CIRCLE_TOL: f64 = 1e-9;
pub const DEFAULT_SAMPLES: usize = 4096;
const MIN_SAMPLES: usize = 16;
const VANISHING: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct WindingResult {
    pub wn_f: i32,
    pub wn_zf: i32,
    pub fredholm: bool,
    /// Moduli of the roots of `z·F`, ascending.
    pub root_moduli: Vec<f64>,
    /// `min | |root| - 1 |`, infinite when there are no roots.
    pub margin: f64,
}

/// All roots of `c2 z² + c1 z + c0`, counted with multiplicity.
///
/// The larger-magnitude root is computed first and the smaller one recovered
/// from the product `c0 / c2`, which avoids cancellation when `|c1|² ≫ |c0 c2|`.
pub fn roots_closed_form(sym: &SymbolPoly) -> Result<Vec<Complex64>> {
    let zero = Complex64::new(0.0, 0.0);
    let SymbolPoly { c2, c1, c0, .. } = *sym;
    if sym.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if c2 == zero {
        return Ok(if c1 == zero { Vec::new() } else { vec![-c0 / c1] });
    }
    let disc = (c1 * c1 - 4.0 * c2 * c0).sqrt();
    // pick the sign that adds magnitudes
    let s = if (c1.conj() * disc).re >= 0.0 { c1 + disc } else { c1 - disc };
    if s == zero {
        // c1 = 0 and disc = 0, so c0 = 0 too: double root at the origin
        return Ok(vec![zero, zero]);
    }
    let big = -s / (2.0 * c2);
    let small = -2.0 * c0 / s;
    Ok(vec![big, small])
}

/// Winding numbers from the number of roots of `z·F` in the open unit disc.
pub fn winding_by_roots(sym: &SymbolPoly, tol_circle: f64) -> Result<WindingResult> {
    let roots = roots_closed_form(sym)?;
    let mut root_moduli: Vec<f64> = roots.iter().map(|z| z.norm()).collect();
    root_moduli.sort_by(f64::total_cmp);
    let margin = root_moduli.iter().map(|m| (m - 1.0).abs()).fold(f64::INFINITY, f64::min);
    let fredholm = margin > tol_circle;
    let wn_zf = root_moduli.iter().filter(|&&m| m < 1.0).count() as i32;
    Ok(WindingResult { wn_f: wn_zf - 1, wn_zf, fredholm, root_moduli, margin })
}

/// Outcome of the argument-principle route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArgumentWinding {
    /// `(1/2π) Σ Δarg`, before rounding.
    pub raw: f64,
    pub wn: i32,
}

impl ArgumentWinding {
    pub fn residual(&self) -> f64 {
        (self.raw - self.wn as f64).abs()
    }
}

/// Winding number of `z·F` from principal-value phase increments over
/// `samples` equally spaced points of the circle.
pub fn winding_by_argument(sym: &SymbolPoly, samples: usize) -> Result<ArgumentWinding> {
    if samples < MIN_SAMPLES {
        return Err(Error::InvalidInput(format!("need at least {MIN_SAMPLES} samples, got {samples}")));
    }
    let step = 2.0 * PI / samples as f64;
    let values = (0..samples)
        .map(|k| {
            let t = k as f64 * step;
            let v = sym.eval_poly(Complex64::from_polar(1.0, t));
            if v.norm() < VANISHING {
                Err(Error::CircleZero { t })
            } else {
                Ok(v)
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let mut total = 0.0;
    for k in 0..samples {
        let (from, to) = (values[k], values[(k + 1) % samples]);
        // principal value of arg(to) - arg(from)
        let jump = (to * from.conj()).arg();
        if jump.abs() > FRAC_PI_2 {
            return Err(Error::Unwrap { index: k, jump });
        }
        total += jump;
    }
    let raw = total / (2.0 * PI);
    Ok(ArgumentWinding { raw, wn: raw.round() as i32 })
}

/// Closed-form case table for `wn(z·F)` at a coin limit:
/// 2 if `|a| < p`, 1 if `|p| < |a|`, 0 if `|a| < -p`.
pub fn winding_table_case(shift: &ShiftParams, limit: CoinSite) -> Result<i32> {
    let (p, a_abs) = (shift.p(), limit.a().abs());
    if (p.abs() - a_abs).abs() <= 1e-12 {
        return Err(Error::Degenerate { p_abs: p.abs(), a_abs });
    }
    Ok(if a_abs < p {
        2
    } else if p.abs() < a_abs {
        1
    } else {
        0
    })
}
