//! Boundary symbols `F±` of the supercharge band and their polynomial form
//! `P(z) = z·F(z) = c2 z² + c1 z + c0`.

use num_complex::Complex64;

use crate::model::{CoinSite, ShiftParams, WalkSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Plus => "plus",
            Side::Minus => "minus",
        }
    }
}

/// Row coefficients `[c2, c1, c0]` of the supercharge band at a site whose
/// coin is `here` and whose right neighbour's coin is `next`:
///
/// * superdiagonal `c2 = (i/2)(1+p) e^{iθ} b(x+1)`
/// * diagonal `c1 = (i/2)|q| (a(x+1) + a(x))`
/// * subdiagonal `c0 = -(i/2)(1-p) e^{-iθ} conj(b(x))`
pub fn band_row(shift: &ShiftParams, here: CoinSite, next: CoinSite) -> [Complex64; 3] {
    let half_i = Complex64::new(0.0, 0.5);
    let phase = shift.phase();
    let p = shift.p();
    let c2 = half_i * (1.0 + p) * phase * next.b();
    let c1 = half_i * (shift.q_abs() * (next.a() + here.a()));
    let c0 = -half_i * (1.0 - p) * phase.conj() * here.b().conj();
    [c2, c1, c0]
}

/// Coefficients of `P(z) = c2 z² + c1 z + c0`, tagged with the side of the
/// walk they describe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolPoly {
    pub c2: Complex64,
    pub c1: Complex64,
    pub c0: Complex64,
    pub side: Side,
}

impl SymbolPoly {
    pub fn new(c2: Complex64, c1: Complex64, c0: Complex64, side: Side) -> Self {
        Self { c2, c1, c0, side }
    }

    /// Symbol of the constant band with coin `limit` on both neighbouring sites.
    pub fn from_limit(shift: &ShiftParams, limit: CoinSite, side: Side) -> Self {
        let [c2, c1, c0] = band_row(shift, limit, limit);
        Self { c2, c1, c0, side }
    }

    pub fn coefficients(&self) -> [Complex64; 3] {
        [self.c2, self.c1, self.c0]
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients().iter().all(|c| *c == Complex64::new(0.0, 0.0))
    }

    /// Degree after dropping vanishing leading coefficients (0 for the zero polynomial).
    pub fn degree(&self) -> usize {
        if self.c2 != Complex64::new(0.0, 0.0) {
            2
        } else if self.c1 != Complex64::new(0.0, 0.0) {
            1
        } else {
            0
        }
    }

    /// `P(z)` via Horner.
    pub fn eval_poly(&self, z: Complex64) -> Complex64 {
        (self.c2 * z + self.c1) * z + self.c0
    }

    /// `F(e^{it}) = P(e^{it}) e^{-it}`.
    pub fn eval_on_circle(&self, t: f64) -> Complex64 {
        let z = Complex64::from_polar(1.0, t);
        self.eval_poly(z) * z.conj()
    }

    /// `P'(z)`.
    pub fn eval_derivative(&self, z: Complex64) -> Complex64 {
        2.0 * self.c2 * z + self.c1
    }

    /// Laurent coefficients of `F` as `(power, coefficient)` pairs: `F = c2 z + c1 + c0 z̄`.
    pub fn laurent(&self) -> [(i32, Complex64); 3] {
        [(1, self.c2), (0, self.c1), (-1, self.c0)]
    }
}

/// Builds `z·F±` from the limit of the walk's coin on the requested side.
pub fn build_symbol(spec: &WalkSpec, side: Side) -> SymbolPoly {
    let limit = match side {
        Side::Plus => spec.coin.limit_plus(),
        Side::Minus => spec.coin.limit_minus(),
    };
    SymbolPoly::from_limit(&spec.shift, limit, side)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CoinProfile;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn walk(p: f64, q: Complex64, plus: CoinSite, minus: CoinSite) -> WalkSpec {
        WalkSpec::new(ShiftParams::new(p, q).unwrap(), CoinProfile::step(minus, plus, 0)).unwrap()
    }

    /// The defining formula of F evaluated term by term, without going
    /// through the polynomial coefficients.
    fn f_direct(p: f64, q: Complex64, site: CoinSite, z: Complex64) -> Complex64 {
        let theta = if q.norm() == 0.0 { 0.0 } else { q.arg() };
        let e = Complex64::from_polar(1.0, theta);
        c(0.0, 0.5)
            * ((1.0 + p) * e * site.b() * z - (1.0 - p) * e.conj() * site.b().conj() * z.conj()
                + 2.0 * q.norm() * site.a())
    }

    #[test]
    fn coefficients_half_sqrt3() {
        let plus = CoinSite::new(0.0, c(1.0, 0.0)).unwrap();
        let spec = walk(0.5, c(3f64.sqrt() / 2.0, 0.0), plus, plus);
        let sym = build_symbol(&spec, Side::Plus);
        assert!((sym.c2 - c(0.0, 0.75)).norm() < 1e-15);
        assert!(sym.c1.norm() < 1e-15);
        assert!((sym.c0 - c(0.0, -0.25)).norm() < 1e-15);
    }

    #[test]
    fn coefficients_at_p_pm_one() {
        let b = Complex64::from_polar(0.6, 0.7);
        let site = CoinSite::new(0.8, b).unwrap();
        let sym = build_symbol(&walk(1.0, c(0.0, 0.0), site, site), Side::Plus);
        assert!((sym.c2 - c(0.0, 1.0) * b).norm() < 1e-15);
        assert_eq!(sym.c1, c(0.0, 0.0));
        assert_eq!(sym.c0, c(0.0, 0.0));
        let sym = build_symbol(&walk(-1.0, c(0.0, 0.0), site, site), Side::Plus);
        assert_eq!(sym.c2, c(0.0, 0.0));
        assert_eq!(sym.c1, c(0.0, 0.0));
        assert!((sym.c0 + c(0.0, 1.0) * b.conj()).norm() < 1e-15);
    }

    #[test]
    fn circle_values() {
        let plus = CoinSite::new(0.0, c(1.0, 0.0)).unwrap();
        let sym = build_symbol(&walk(0.5, c(3f64.sqrt() / 2.0, 0.0), plus, plus), Side::Plus);
        assert!((sym.eval_on_circle(0.0) - c(0.0, 0.5)).norm() < 1e-15);

        let constant = SymbolPoly::new(c(0.0, 0.0), c(0.0, 0.0), c(0.0, -1.0), Side::Plus);
        for t in [0.0, 0.3, 2.0, 5.9] {
            let expected = c(0.0, -1.0) * Complex64::from_polar(1.0, -t);
            assert!((constant.eval_on_circle(t) - expected).norm() < 1e-15);
        }

        let sym = build_symbol(&walk(0.0, c(1.0, 0.0), plus, plus), Side::Plus);
        assert!((sym.eval_on_circle(PI / 2.0) - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn swapping_limits_swaps_sides() {
        let a = CoinSite::from_a(0.3, 1.0).unwrap();
        let b = CoinSite::from_a(-0.6, -0.4).unwrap();
        let shift = c(0.6, 0.0);
        let spec = walk(0.8, shift, a, b);
        let swapped = WalkSpec { shift: spec.shift, coin: spec.coin.with_limits_swapped() };
        assert_eq!(build_symbol(&spec, Side::Plus).coefficients(), build_symbol(&swapped, Side::Minus).coefficients());
        assert_eq!(build_symbol(&spec, Side::Minus).coefficients(), build_symbol(&swapped, Side::Plus).coefficients());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn matches_defining_formula(
                p in -1.0f64..=1.0, qphase in -PI..PI, a in -1.0f64..=1.0, bphase in -PI..PI, t in 0.0..(2.0 * PI),
            ) {
                let q = Complex64::from_polar((1.0 - p * p).sqrt(), qphase);
                let site = CoinSite::from_a(a, bphase).unwrap();
                let spec = walk(p, q, site, site);
                let sym = build_symbol(&spec, Side::Plus);
                let z = Complex64::from_polar(1.0, t);
                prop_assert!((sym.eval_on_circle(t) - f_direct(spec.shift.p(), spec.shift.q(), site, z)).norm() < 1e-12);
                // triangle-inequality bound |F| <= |b| + |q||a|
                let bound = site.b().norm() + spec.shift.q_abs() * site.a().abs();
                prop_assert!(sym.eval_on_circle(t).norm() <= bound + 1e-12);
                // reconstruction from the limit
                let e = spec.shift.phase();
                prop_assert!((sym.c2 - c(0.0, 0.5) * (1.0 + spec.shift.p()) * e * site.b()).norm() < 1e-12);
                prop_assert!((sym.c1 - c(0.0, 1.0) * spec.shift.q_abs() * site.a()).norm() < 1e-12);
                prop_assert!((sym.c0 + c(0.0, 0.5) * (1.0 - spec.shift.p()) * e.conj() * site.b().conj()).norm() < 1e-12);
            }
        }
    }
}
