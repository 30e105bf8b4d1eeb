//! Finite-window matrix realizations of the walk operators.
//!
//! Two-component operators on `ℓ²(ℤ) ⊕ ℓ²(ℤ)` use a site-major layout: the
//! basis vector of component `c ∈ {0, 1}` at site `x` sits at index
//! `2(x - lo) + c`. The left shift acts as `(Lψ)(x) = ψ(x + 1)`, so on basis
//! vectors `L|x⟩ = |x - 1⟩`.

use std::collections::BTreeMap;
use std::io::Write;

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{CoinProfile, ShiftParams, WalkSpec};
use crate::report::fmt_f64;
use crate::symbol::{band_row, SymbolPoly};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Open,
    Periodic,
}

/// Inclusive site range `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
    pub boundary: Boundary,
}

impl Window {
    pub const MIN_SPAN: i64 = 8;

    pub fn new(lo: i64, hi: i64, boundary: Boundary) -> Result<Self> {
        if hi - lo < Self::MIN_SPAN {
            return Err(Error::WindowTooSmall { lo, hi, reason: format!("need hi - lo >= {}", Self::MIN_SPAN) });
        }
        Ok(Self { lo, hi, boundary })
    }

    pub fn open(lo: i64, hi: i64) -> Result<Self> {
        Self::new(lo, hi, Boundary::Open)
    }

    pub fn periodic(lo: i64, hi: i64) -> Result<Self> {
        Self::new(lo, hi, Boundary::Periodic)
    }

    /// `[-half, half]` with open boundary.
    pub fn symmetric(half: i64) -> Result<Self> {
        Self::open(-half, half)
    }

    /// Index space `0..n` of a Toeplitz truncation; exempt from the span check.
    fn hardy(n: usize) -> Self {
        Self { lo: 0, hi: n as i64 - 1, boundary: Boundary::Open }
    }

    pub fn sites(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn contains(&self, x: i64) -> bool {
        (self.lo..=self.hi).contains(&x)
    }

    pub fn site_iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    /// Position of site `x`, wrapping around for periodic windows and
    /// returning `None` when an open window does not contain it.
    pub fn position(&self, x: i64) -> Option<usize> {
        if self.contains(x) {
            Some((x - self.lo) as usize)
        } else if self.boundary == Boundary::Periodic {
            Some((x - self.lo).rem_euclid(self.sites() as i64) as usize)
        } else {
            None
        }
    }

    pub fn site_at(&self, position: usize) -> i64 {
        self.lo + position as i64
    }

    /// Sites of the middle half of the window.
    pub fn central_half(&self) -> (i64, i64) {
        let quarter = (self.hi - self.lo) / 4;
        (self.lo + quarter, self.hi - quarter)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    Gamma,
    Coin,
    Evolution,
    Supercharge,
    QPlus,
    PiecewiseA,
    PiecewiseB,
    Toeplitz,
}

/// Dense complex matrix of a finite section, with the window it lives on and
/// its declared bandwidth in sites.
#[derive(Debug, Clone)]
pub struct BandedMatrix {
    pub window: Window,
    pub kind: OperatorKind,
    pub bandwidth: usize,
    pub data: Array2<Complex64>,
}

impl BandedMatrix {
    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    /// Number of components per site (2 for `Γ`, `C`, `U`, `Q`; 1 otherwise).
    pub fn components(&self) -> usize {
        self.dim() / self.window.sites()
    }

    /// Largest entry modulus outside the declared band, ignoring periodic corners.
    pub fn out_of_band(&self) -> f64 {
        let comps = self.components();
        let mut worst: f64 = 0.0;
        for ((r, c), v) in self.data.indexed_iter() {
            let distance = (r / comps).abs_diff(c / comps);
            let wraps = self.window.boundary == Boundary::Periodic
                && self.window.sites() - distance <= self.bandwidth;
            if distance > self.bandwidth && !wraps {
                worst = worst.max(v.norm());
            }
        }
        worst
    }

    /// Writes the nonzero entries as `row,col,re,im` CSV lines.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(["row", "col", "re", "im"])?;
        for ((r, c), v) in self.data.indexed_iter() {
            if *v != ZERO {
                writer.write_record([r.to_string(), c.to_string(), fmt_f64(v.re), fmt_f64(v.im)])?;
            }
        }
        writer.flush()?;
        Ok(())
    }
}

/// Conjugate transpose.
pub fn adjoint(m: &Array2<Complex64>) -> Array2<Complex64> {
    m.t().mapv(|v| v.conj())
}

/// Trigonometric polynomial `h(z) = Σ_{|m| ≤ M} h_m z^m`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TrigPoly {
    coeffs: BTreeMap<i32, Complex64>,
}

impl TrigPoly {
    pub fn new(pairs: impl IntoIterator<Item = (i32, Complex64)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (m, c) in pairs {
            *coeffs.entry(m).or_insert(ZERO) += c;
        }
        coeffs.retain(|_, c| *c != ZERO);
        Self { coeffs }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new([(0, c)])
    }

    pub fn monomial(power: i32, c: Complex64) -> Self {
        Self::new([(power, c)])
    }

    /// `F(z) = c2 z + c1 + c0 z̄`.
    pub fn from_symbol(sym: &SymbolPoly) -> Self {
        Self::new(sym.laurent())
    }

    /// Product of linear factors `scale · z^shift · Π (z - r)`.
    pub fn from_roots(scale: Complex64, shift: i32, roots: &[Complex64]) -> Self {
        let mut poly = vec![scale];
        for &r in roots {
            let mut next = vec![ZERO; poly.len() + 1];
            for (k, &c) in poly.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= r * c;
            }
            poly = next;
        }
        Self::new(poly.into_iter().enumerate().map(|(k, c)| (k as i32 + shift, c)))
    }

    pub fn coeff(&self, m: i32) -> Complex64 {
        self.coeffs.get(&m).copied().unwrap_or(ZERO)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, Complex64)> + '_ {
        self.coeffs.iter().map(|(&m, &c)| (m, c))
    }

    /// `M = max |m|` over nonzero terms.
    pub fn degree(&self) -> usize {
        self.coeffs.keys().map(|m| m.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.terms().map(|(m, c)| c * z.powi(m)).sum()
    }

    /// `h(z̄)`: on the circle this maps `z^m` to `z^{-m}`.
    pub fn conj_arg(&self) -> Self {
        Self::new(self.terms().map(|(m, c)| (-m, c)))
    }
}

/// `Γ = [[p, qL], [q̄L*, -p]]`.
pub fn assemble_gamma(shift: &ShiftParams, w: &Window) -> BandedMatrix {
    let n = w.sites();
    let mut data = Array2::zeros((2 * n, 2 * n));
    let (p, q) = (Complex64::new(shift.p(), 0.0), shift.q());
    for (i, x) in w.site_iter().enumerate() {
        data[[2 * i, 2 * i]] = p;
        data[[2 * i + 1, 2 * i + 1]] = -p;
        if let Some(j) = w.position(x + 1) {
            data[[2 * i, 2 * j + 1]] += q;
        }
        if let Some(j) = w.position(x - 1) {
            data[[2 * i + 1, 2 * j]] += q.conj();
        }
    }
    BandedMatrix { window: *w, kind: OperatorKind::Gamma, bandwidth: 1, data }
}

/// `C = [[a, b*], [b, -a]]`, block diagonal.
pub fn assemble_coin(coin: &CoinProfile, w: &Window) -> BandedMatrix {
    let n = w.sites();
    let mut data = Array2::zeros((2 * n, 2 * n));
    for (i, x) in w.site_iter().enumerate() {
        let site = coin.eval(x);
        let a = Complex64::new(site.a(), 0.0);
        data[[2 * i, 2 * i]] = a;
        data[[2 * i, 2 * i + 1]] = site.b().conj();
        data[[2 * i + 1, 2 * i]] = site.b();
        data[[2 * i + 1, 2 * i + 1]] = -a;
    }
    BandedMatrix { window: *w, kind: OperatorKind::Coin, bandwidth: 0, data }
}

/// `U = ΓC` and the supercharge `Q = (U - U*) / 2i`.
pub fn assemble_evolution_and_supercharge(spec: &WalkSpec, w: &Window) -> (BandedMatrix, BandedMatrix) {
    let gamma = assemble_gamma(&spec.shift, w);
    let coin = assemble_coin(&spec.coin, w);
    let u = gamma.data.dot(&coin.data);
    let q = (&u - &adjoint(&u)) * Complex64::new(0.0, -0.5);
    (
        BandedMatrix { window: *w, kind: OperatorKind::Evolution, bandwidth: 1, data: u },
        BandedMatrix { window: *w, kind: OperatorKind::Supercharge, bandwidth: 1, data: q },
    )
}

/// The supercharge band `Q_{ε,+} = (i/2)[(1+p)e^{iθ}Lb - (1-p)e^{-iθ}b*L* + |q|(a(·+1) + a)]`
/// as an `n×n` matrix; row `x` couples sites `x - 1`, `x`, `x + 1`.
pub fn assemble_q_plus(spec: &WalkSpec, w: &Window) -> BandedMatrix {
    let n = w.sites();
    let mut data = Array2::zeros((n, n));
    for (i, x) in w.site_iter().enumerate() {
        let here = spec.coin.eval(x);
        // in periodic mode the neighbour of hi is lo
        let next_site = w.position(x + 1).map_or(x + 1, |j| w.site_at(j));
        let [c2, c1, c0] = band_row(&spec.shift, here, spec.coin.eval(next_site));
        data[[i, i]] += c1;
        if let Some(j) = w.position(x + 1) {
            data[[i, j]] += c2;
        }
        if let Some(j) = w.position(x - 1) {
            data[[i, j]] += c0;
        }
    }
    BandedMatrix { window: *w, kind: OperatorKind::QPlus, bandwidth: 1, data }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// `A(f,g)|x⟩ = g(L)|x⟩` for `x ≥ 0`, `f(L)|x⟩` for `x ≤ -1`.
    A,
    /// As `A`, with each column projected back onto its own half-line.
    B,
}

/// Finite section of `A(f, g)` or `B(f, g)` on an open window.
pub fn assemble_piecewise(f: &TrigPoly, g: &TrigPoly, w: &Window, variant: Variant) -> Result<BandedMatrix> {
    let reach = f.degree().max(g.degree()) as i64 + 1;
    if !(w.contains(-reach) && w.contains(reach)) {
        return Err(Error::WindowTooSmall {
            lo: w.lo,
            hi: w.hi,
            reason: format!("must contain [{}, {}]", -reach, reach),
        });
    }
    let n = w.sites();
    let mut data = Array2::zeros((n, n));
    for (col, x) in w.site_iter().enumerate() {
        let symbol = if x >= 0 { g } else { f };
        for (m, c) in symbol.terms() {
            // L^m |x⟩ = |x - m⟩
            let y = x - m as i64;
            if variant == Variant::B && (y >= 0) != (x >= 0) {
                continue;
            }
            if let Some(row) = w.position(y).filter(|_| w.contains(y)) {
                data[[row, col]] += c;
            }
        }
    }
    let kind = match variant {
        Variant::A => OperatorKind::PiecewiseA,
        Variant::B => OperatorKind::PiecewiseB,
    };
    Ok(BandedMatrix { window: *w, kind, bandwidth: reach as usize - 1, data })
}

/// `n×n` truncation of the Toeplitz operator `T_h`, entry `(j, k) = ĥ(j - k)`.
pub fn assemble_toeplitz(h: &TrigPoly, n: usize) -> Result<BandedMatrix> {
    if n <= 2 * h.degree() {
        return Err(Error::InvalidInput(format!("Toeplitz size {n} must exceed twice the degree {}", h.degree())));
    }
    let data = Array2::from_shape_fn((n, n), |(j, k)| h.coeff(j as i32 - k as i32));
    Ok(BandedMatrix { window: Window::hardy(n), kind: OperatorKind::Toeplitz, bandwidth: h.degree(), data })
}

/// Reorders a `B(f, g)` section along `|x⟩ ↦ z^x` (`x ≥ 0`, first block) and
/// `|x⟩ ↦ z^{-x-1}` (`x ≤ -1`, second block), returning the diagonal blocks
/// `(T_{g(z̄)}, T_f)`.
pub fn hardy_conjugate(mat: &BandedMatrix) -> Result<(BandedMatrix, BandedMatrix)> {
    let w = mat.window;
    if mat.kind != OperatorKind::PiecewiseB || mat.components() != 1 {
        return Err(Error::InvalidInput("hardy_conjugate expects a B(f, g) section".into()));
    }
    if !(w.lo <= -1 && w.hi >= 0) {
        return Err(Error::WindowTooSmall { lo: w.lo, hi: w.hi, reason: "window must straddle the cut at 0".into() });
    }
    let n_plus = (w.hi + 1) as usize;
    let n_minus = (-w.lo) as usize;
    // (block, position within block) for each matrix index
    let place = |i: usize| {
        let x = w.site_at(i);
        if x >= 0 {
            (0usize, x as usize)
        } else {
            (1usize, (-x - 1) as usize)
        }
    };
    let mut first = Array2::zeros((n_plus, n_plus));
    let mut second = Array2::zeros((n_minus, n_minus));
    for ((r, c), v) in mat.data.indexed_iter() {
        let ((br, pr), (bc, pc)) = (place(r), place(c));
        match (br, bc) {
            (0, 0) => first[[pr, pc]] = *v,
            (1, 1) => second[[pr, pc]] = *v,
            _ if v.norm() > 1e-12 => {
                return Err(Error::NonBlockDiagonal { row: r, col: c, magnitude: v.norm() });
            }
            _ => {}
        }
    }
    let wrap = |data: Array2<Complex64>| BandedMatrix {
        window: Window::hardy(data.nrows()),
        kind: OperatorKind::Toeplitz,
        bandwidth: mat.bandwidth,
        data,
    };
    Ok((wrap(first), wrap(second)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CoinSite;
    use crate::symbol::{build_symbol, Side};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn max_abs(m: &Array2<Complex64>) -> f64 {
        m.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    fn identity(n: usize) -> Array2<Complex64> {
        Array2::from_diag_elem(n, c(1.0, 0.0))
    }

    /// Largest entry of `m` restricted to rows whose site is at least
    /// `margin` sites from both window edges.
    fn interior_max(m: &Array2<Complex64>, w: &Window, margin: usize) -> f64 {
        let comps = m.nrows() / w.sites();
        m.indexed_iter()
            .filter(|((r, _), _)| {
                let site = r / comps;
                site >= margin && site + margin < w.sites()
            })
            .map(|(_, v)| v.norm())
            .fold(0.0, f64::max)
    }

    fn step_spec() -> WalkSpec {
        let minus = CoinSite::from_a(0.9, 0.4).unwrap();
        let plus = CoinSite::from_a(-0.2, -1.3).unwrap();
        WalkSpec::new(ShiftParams::new(0.6, Complex64::from_polar(0.8, 0.7)).unwrap(), CoinProfile::step(minus, plus, 0))
            .unwrap()
    }

    #[test]
    fn window_validation() {
        assert!(Window::open(0, 7).is_err());
        let w = Window::periodic(0, 9).unwrap();
        assert_eq!(w.position(10), Some(0));
        assert_eq!(w.position(-1), Some(9));
        assert_eq!(Window::open(0, 9).unwrap().position(10), None);
    }

    #[test]
    fn gamma_examples() {
        let w = Window::open(-4, 5).unwrap();
        let g = assemble_gamma(&ShiftParams::new(1.0, c(0.0, 0.0)).unwrap(), &w);
        let diag: Array2<Complex64> =
            Array2::from_diag(&ndarray::Array1::from_shape_fn(20, |i| c(if i % 2 == 0 { 1.0 } else { -1.0 }, 0.0)));
        assert_eq!(g.data, diag);

        // Γ² = I on a periodic ring
        let ring = Window::periodic(0, 8).unwrap();
        let g = assemble_gamma(&ShiftParams::new(0.0, c(1.0, 0.0)).unwrap(), &ring);
        assert_eq!(g.data.dot(&g.data), identity(18));
        assert_eq!(g.out_of_band(), 0.0);

        // open window: interior rows of Γ² are exact, the edges are not
        let g = assemble_gamma(&ShiftParams::new(0.6, c(0.8, 0.0)).unwrap(), &w);
        let sq = g.data.dot(&g.data) - identity(20);
        assert!(interior_max(&sq, &w, 1) < 1e-15);
        assert!(max_abs(&sq) > 0.1);
        assert_eq!(g.data, adjoint(&g.data));
    }

    #[test]
    fn coin_examples() {
        let w = Window::open(-4, 5).unwrap();
        let flip = CoinProfile::homogeneous(CoinSite::new(0.0, c(1.0, 0.0)).unwrap());
        let m = assemble_coin(&flip, &w);
        assert_eq!(m.data[[0, 1]], c(1.0, 0.0));
        assert_eq!(m.data[[1, 0]], c(1.0, 0.0));
        assert_eq!(m.data[[0, 0]], c(0.0, 0.0));

        let spec = step_spec();
        let m = assemble_coin(&spec.coin, &w);
        assert!(max_abs(&(m.data.dot(&m.data) - identity(20))) < 1e-12);
        assert_eq!(m.data, adjoint(&m.data));
        // site -1 sits at position 3
        assert_eq!(m.data[[6, 6]].re, spec.coin.limit_minus().a());
        assert_eq!(m.data[[8, 8]].re, spec.coin.limit_plus().a());
    }

    #[test]
    fn trivial_evolution() {
        let w = Window::open(-4, 5).unwrap();
        let spec = WalkSpec::new(
            ShiftParams::new(1.0, c(0.0, 0.0)).unwrap(),
            CoinProfile::homogeneous(CoinSite::new(1.0, c(0.0, 0.0)).unwrap()),
        )
        .unwrap();
        let (u, q) = assemble_evolution_and_supercharge(&spec, &w);
        assert_eq!(u.data, identity(20));
        assert_eq!(max_abs(&q.data), 0.0);
    }

    #[test]
    fn chiral_symmetry() {
        // homogeneous ring: ΓUΓ = U* everywhere
        let ring = Window::periodic(-6, 6).unwrap();
        let spec = WalkSpec::new(step_spec().shift, CoinProfile::homogeneous(CoinSite::from_a(0.3, 0.9).unwrap())).unwrap();
        let (u, q) = assemble_evolution_and_supercharge(&spec, &ring);
        let g = assemble_gamma(&spec.shift, &ring);
        assert!(max_abs(&(g.data.dot(&u.data).dot(&g.data) - adjoint(&u.data))) < 1e-12);
        assert!(max_abs(&(g.data.dot(&q.data) + q.data.dot(&g.data))) < 1e-12);
        assert!(max_abs(&(&u.data.dot(&adjoint(&u.data)) - identity(26))) < 1e-12);

        // step coin, open window: identities hold away from the edges
        let w = Window::open(-10, 10).unwrap();
        let spec = step_spec();
        let (u, q) = assemble_evolution_and_supercharge(&spec, &w);
        let g = assemble_gamma(&spec.shift, &w);
        assert!(interior_max(&(g.data.dot(&u.data).dot(&g.data) - adjoint(&u.data)), &w, 2) < 1e-12);
        assert!(interior_max(&(g.data.dot(&q.data) + q.data.dot(&g.data)), &w, 2) < 1e-12);
        assert_eq!(q.data, adjoint(&q.data));
        assert!(u.out_of_band() == 0.0 && q.out_of_band() == 0.0);
    }

    #[test]
    fn q_plus_examples() {
        let w = Window::open(-5, 5).unwrap();
        let flip = CoinProfile::homogeneous(CoinSite::new(0.0, c(1.0, 0.0)).unwrap());
        let spec = WalkSpec::new(ShiftParams::new(1.0, c(0.0, 0.0)).unwrap(), flip.clone()).unwrap();
        let m = assemble_q_plus(&spec, &w);
        for ((r, col), v) in m.data.indexed_iter() {
            let expected = if col == r + 1 { c(0.0, 1.0) } else { c(0.0, 0.0) };
            assert!((v - expected).norm() < 1e-15);
        }

        let spec = WalkSpec::new(ShiftParams::new(0.5, c(0.75f64.sqrt(), 0.0)).unwrap(), flip).unwrap();
        let m = assemble_q_plus(&spec, &w);
        let sym = build_symbol(&spec, Side::Plus);
        for i in 1..10 {
            assert!((m.data[[i, i - 1]] - c(0.0, -0.25)).norm() < 1e-15);
            assert!(m.data[[i, i]].norm() < 1e-15);
            assert!((m.data[[i, i + 1]] - c(0.0, 0.75)).norm() < 1e-15);
            assert_eq!([m.data[[i, i + 1]], m.data[[i, i]], m.data[[i, i - 1]]], sym.coefficients());
        }
    }

    #[test]
    fn q_plus_step_rows() {
        let w = Window::open(-6, 6).unwrap();
        let spec = step_spec();
        let m = assemble_q_plus(&spec, &w);
        let plus = build_symbol(&spec, Side::Plus).coefficients();
        let minus = build_symbol(&spec, Side::Minus).coefficients();
        for x in -5..=5i64 {
            let i = (x + 6) as usize;
            let row = [m.data[[i, i + 1]], m.data[[i, i]], m.data[[i, i - 1]]];
            match x {
                ..=-2 => assert_eq!(row, minus),
                -1 => {
                    assert_eq!(row[0], plus[0]);
                    assert_eq!(row[2], minus[2]);
                    assert_ne!(row[1], plus[1]);
                }
                _ => assert_eq!(row, plus),
            }
        }
    }

    #[test]
    fn piecewise_constants_are_identity() {
        let w = Window::open(-5, 5).unwrap();
        let one = TrigPoly::constant(c(1.0, 0.0));
        for v in [Variant::A, Variant::B] {
            assert_eq!(assemble_piecewise(&one, &one, &w, v).unwrap().data, identity(11));
        }
    }

    #[test]
    fn piecewise_shift_difference() {
        let w = Window::open(-5, 5).unwrap();
        let z = TrigPoly::monomial(1, c(1.0, 0.0));
        let a = assemble_piecewise(&z, &z, &w, Variant::A).unwrap();
        let b = assemble_piecewise(&z, &z, &w, Variant::B).unwrap();
        let diff = &a.data - &b.data;
        // only column x = 0 (position 5) loses its entry at row x = -1
        for ((r, col), v) in diff.indexed_iter() {
            let expected = if (r, col) == (4, 5) { c(1.0, 0.0) } else { c(0.0, 0.0) };
            assert_eq!(*v, expected);
        }
    }

    #[test]
    fn piecewise_needs_room() {
        let w = Window::open(-2, 8).unwrap();
        let f = TrigPoly::monomial(2, c(1.0, 0.0));
        assert!(matches!(assemble_piecewise(&f, &f, &w, Variant::A), Err(Error::WindowTooSmall { .. })));
    }

    #[test]
    fn toeplitz_examples() {
        let t = assemble_toeplitz(&TrigPoly::monomial(1, c(1.0, 0.0)), 6).unwrap();
        for ((j, k), v) in t.data.indexed_iter() {
            assert_eq!(v.re, if j == k + 1 { 1.0 } else { 0.0 });
        }
        let t = assemble_toeplitz(&TrigPoly::constant(c(2.0, -1.0)), 5).unwrap();
        assert_eq!(t.data, identity(5) * c(2.0, -1.0));
        assert!(assemble_toeplitz(&TrigPoly::monomial(3, c(1.0, 0.0)), 6).is_err());
    }

    #[test]
    fn trig_poly_from_roots() {
        let h = TrigPoly::from_roots(c(2.0, 0.0), -1, &[c(0.5, 0.0), c(0.0, 3.0)]);
        for t in [0.1, 1.7, 4.0] {
            let z = Complex64::from_polar(1.0, t);
            let expected = 2.0 * (z - 0.5) * (z - c(0.0, 3.0)) / z;
            assert!((h.eval(z) - expected).norm() < 1e-14);
        }
        assert_eq!(h.degree(), 1);
        assert_eq!(h.conj_arg().coeff(-1), h.coeff(1));
    }

    #[test]
    fn hardy_blocks() {
        let w = Window::open(-7, 6).unwrap();
        let one = TrigPoly::constant(c(1.0, 0.0));
        let z = TrigPoly::monomial(1, c(1.0, 0.0));
        let (t1, t2) = hardy_conjugate(&assemble_piecewise(&one, &one, &w, Variant::B).unwrap()).unwrap();
        assert_eq!(t1.data, identity(7));
        assert_eq!(t2.data, identity(7));

        let (t1, t2) = hardy_conjugate(&assemble_piecewise(&z, &one, &w, Variant::B).unwrap()).unwrap();
        assert_eq!(t1.data, identity(7));
        assert_eq!(t2.data, assemble_toeplitz(&z, 7).unwrap().data);

        let (t1, _) = hardy_conjugate(&assemble_piecewise(&one, &z, &w, Variant::B).unwrap()).unwrap();
        assert_eq!(t1.data, assemble_toeplitz(&z.conj_arg(), 7).unwrap().data);

        let a = assemble_piecewise(&one, &z, &w, Variant::A).unwrap();
        assert!(matches!(hardy_conjugate(&a), Err(Error::InvalidInput(_))));
        let mut leaky = assemble_piecewise(&one, &z, &w, Variant::B).unwrap();
        leaky.data[[0, 13]] = c(1.0, 0.0);
        assert!(matches!(hardy_conjugate(&leaky), Err(Error::NonBlockDiagonal { .. })));
    }

    #[test]
    fn csv_dump() {
        let w = Window::open(0, 8).unwrap();
        let g = assemble_gamma(&ShiftParams::new(1.0, c(0.0, 0.0)).unwrap(), &w);
        let mut buf = Vec::new();
        g.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("row,col,re,im"));
        assert_eq!(lines.next(), Some("0,0,1.0000000000000000e0,0.0000000000000000e0"));
        assert_eq!(text.lines().count(), 19);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn trig() -> impl Strategy<Value = TrigPoly> {
            proptest::collection::vec((-3i32..=3, -1.0f64..1.0, -1.0f64..1.0), 1..5)
                .prop_map(|terms| TrigPoly::new(terms.into_iter().map(|(m, re, im)| (m, c(re, im)))))
        }

        proptest! {
            #[test]
            fn a_minus_b_is_supported_near_cut(f in trig(), g in trig()) {
                let w = Window::open(-12, 12).unwrap();
                let a = assemble_piecewise(&f, &g, &w, Variant::A).unwrap();
                let b = assemble_piecewise(&f, &g, &w, Variant::B).unwrap();
                let m = f.degree().max(g.degree()) as i64;
                let diff = &a.data - &b.data;
                for (col, x) in w.site_iter().enumerate() {
                    if x.abs() > m {
                        prop_assert!(diff.column(col).iter().all(|v| *v == ZERO));
                    }
                }
            }

            #[test]
            fn b_conjugates_to_toeplitz_pair(f in trig(), g in trig()) {
                let w = Window::open(-10, 11).unwrap();
                let b = assemble_piecewise(&f, &g, &w, Variant::B).unwrap();
                let (t1, t2) = hardy_conjugate(&b).unwrap();
                prop_assert_eq!(t1.data, assemble_toeplitz(&g.conj_arg(), 12).unwrap().data);
                prop_assert_eq!(t2.data, assemble_toeplitz(&f, 10).unwrap().data);
            }

            #[test]
            fn q_plus_matches_piecewise_symbols_off_the_cut(
                p in -0.99f64..0.99, qphase in -3.0f64..3.0, am in -1.0f64..=1.0, ap in -1.0f64..=1.0, phase in -3.0f64..3.0,
            ) {
                let shift = ShiftParams::new(p, Complex64::from_polar((1.0 - p * p).sqrt(), qphase)).unwrap();
                let coin = CoinProfile::step(CoinSite::from_a(am, phase).unwrap(), CoinSite::from_a(ap, -phase).unwrap(), 0);
                let spec = WalkSpec::new(shift, coin).unwrap();
                let w = Window::open(-9, 9).unwrap();
                let q = assemble_q_plus(&spec, &w);
                let f_minus = TrigPoly::from_symbol(&build_symbol(&spec, Side::Minus));
                let f_plus = TrigPoly::from_symbol(&build_symbol(&spec, Side::Plus));
                let a = assemble_piecewise(&f_minus, &f_plus, &w, Variant::A).unwrap();
                let diff = &q.data - &a.data;
                for ((r, col), v) in diff.indexed_iter() {
                    if w.site_at(col) != -1 {
                        prop_assert!(*v == ZERO, "entry ({}, {}) = {}", r, col, v);
                    } else {
                        prop_assert!((w.site_at(r) + 1).abs() <= 1 || *v == ZERO);
                    }
                }
            }
        }
    }
}
