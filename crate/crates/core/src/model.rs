//! Parameters of a split-step quantum walk.
//!
//! A walk is fixed by the shift scalars `(p, q)` with `p² + |q|² = 1` and a
//! site-dependent coin `(a(x), b(x))` with `a(x)² + |b(x)|² = 1` whose limits
//! at `±∞` exist. Profiles are evaluation rules, so any finite window can be
//! materialized on demand.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Deviation from the unit sphere that is silently renormalized.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// `1 / sqrt(norm_sq)`, or exactly 1 when the input is already on the sphere
/// up to rounding, so that values such as `p = 0.5` survive unchanged.
fn renormalization(norm_sq: f64) -> f64 {
    if (norm_sq - 1.0).abs() <= 8.0 * f64::EPSILON {
        1.0
    } else {
        norm_sq.sqrt().recip()
    }
}

/// Shift scalars `(p, q)` together with the derived phase `theta = arg q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftParams {
    p: f64,
    q: Complex64,
    theta: f64,
}

impl ShiftParams {
    /// Builds normalized shift scalars, rejecting inputs off the unit sphere
    /// by more than [`NORMALIZATION_TOL`].
    pub fn new(p: f64, q: Complex64) -> Result<Self> {
        let norm_sq = p * p + q.norm_sqr();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::Normalization { what: "p^2 + |q|^2", norm_sq });
        }
        let scale = renormalization(norm_sq);
        let (p, q) = (p * scale, q * scale);
        let theta = if q == Complex64::new(0.0, 0.0) { 0.0 } else { q.arg() };
        Ok(Self { p, q, theta })
    }

    /// Real `q = sqrt(1 - p²)`, the parameterization used by sweeps.
    pub fn from_p(p: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&p) {
            return Err(Error::Normalization { what: "p^2 + |q|^2", norm_sq: p * p });
        }
        Self::new(p, Complex64::new((1.0 - p * p).sqrt(), 0.0))
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }

    pub fn q_abs(&self) -> f64 {
        self.q.norm()
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `e^{iθ}`.
    pub fn phase(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.theta)
    }
}

/// One coin value `(a, b)` with `a² + |b|² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinSite {
    a: f64,
    b: Complex64,
}

impl CoinSite {
    pub fn new(a: f64, b: Complex64) -> Result<Self> {
        let norm_sq = a * a + b.norm_sqr();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::Normalization { what: "a^2 + |b|^2", norm_sq });
        }
        let scale = renormalization(norm_sq);
        Ok(Self { a: a * scale, b: b * scale })
    }

    /// `b = e^{iφ} sqrt(1 - a²)`.
    pub fn from_a(a: f64, phi: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&a) {
            return Err(Error::Normalization { what: "a^2 + |b|^2", norm_sq: a * a });
        }
        Self::new(a, Complex64::from_polar((1.0 - a * a).sqrt(), phi))
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    fn approx_eq(&self, other: &CoinSite, tol: f64) -> bool {
        (self.a - other.a).abs() <= tol && (self.b - other.b).norm() <= tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileKind {
    Step,
    MultiStep,
    Tanh,
}

/// Site-dependent coin with limits at `±∞`.
#[derive(Debug, Clone, PartialEq)]
pub enum CoinProfile {
    /// Piecewise-constant coin. `breakpoints[k] = (x_k, site)` means the coin
    /// equals `site` on `[x_k, x_{k+1})`; below the first breakpoint it equals
    /// `limit_minus`. The last breakpoint's site is the `+∞` limit.
    Piecewise { kind: ProfileKind, limit_minus: CoinSite, breakpoints: Vec<(i64, CoinSite)> },
    /// `a(x) = ½(a₊ + a₋) + ½(a₊ - a₋) tanh(x / width)`, `b(x) = e^{iφ} sqrt(1 - a(x)²)`.
    Tanh { a_minus: f64, a_plus: f64, width: f64, phi: f64 },
}

impl CoinProfile {
    /// Coin equal to `minus` for `x < at` and `plus` for `x >= at`.
    pub fn step(minus: CoinSite, plus: CoinSite, at: i64) -> Self {
        CoinProfile::Piecewise {
            kind: ProfileKind::Step,
            limit_minus: minus,
            breakpoints: vec![(at, plus)],
        }
    }

    /// Translation-invariant coin.
    pub fn homogeneous(site: CoinSite) -> Self {
        Self::step(site, site, 0)
    }

    pub fn multi_step(limit_minus: CoinSite, breakpoints: Vec<(i64, CoinSite)>) -> Result<Self> {
        if breakpoints.is_empty() {
            return Err(Error::InvalidProfile("multi-step profile needs at least one breakpoint".into()));
        }
        if breakpoints.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidProfile("breakpoints must be strictly increasing".into()));
        }
        Ok(CoinProfile::Piecewise { kind: ProfileKind::MultiStep, limit_minus, breakpoints })
    }

    pub fn tanh(a_minus: f64, a_plus: f64, width: f64, phi: f64) -> Result<Self> {
        if !(width > 0.0 && width.is_finite()) {
            return Err(Error::InvalidProfile(format!("tanh width must be positive, got {width}")));
        }
        for a in [a_minus, a_plus] {
            if !(-1.0..=1.0).contains(&a) {
                return Err(Error::InvalidProfile(format!("tanh limit a = {a} outside [-1, 1]")));
            }
        }
        Ok(CoinProfile::Tanh { a_minus, a_plus, width, phi })
    }

    pub fn kind(&self) -> ProfileKind {
        match self {
            CoinProfile::Piecewise { kind, .. } => *kind,
            CoinProfile::Tanh { .. } => ProfileKind::Tanh,
        }
    }

    pub fn is_piecewise_constant(&self) -> bool {
        matches!(self, CoinProfile::Piecewise { .. })
    }

    pub fn limit_minus(&self) -> CoinSite {
        match self {
            CoinProfile::Piecewise { limit_minus, .. } => *limit_minus,
            CoinProfile::Tanh { a_minus, phi, .. } => tanh_site(*a_minus, *phi),
        }
    }

    pub fn limit_plus(&self) -> CoinSite {
        match self {
            CoinProfile::Piecewise { limit_minus, breakpoints, .. } => {
                breakpoints.last().map_or(*limit_minus, |&(_, s)| s)
            }
            CoinProfile::Tanh { a_plus, phi, .. } => tanh_site(*a_plus, *phi),
        }
    }

    /// Breakpoint sites, empty for tanh profiles.
    pub fn breakpoints(&self) -> &[(i64, CoinSite)] {
        match self {
            CoinProfile::Piecewise { breakpoints, .. } => breakpoints,
            CoinProfile::Tanh { .. } => &[],
        }
    }

    /// Smallest interval of sites outside which the coin is at its limits
    /// (for tanh profiles, the interpolation centre).
    pub fn interface_span(&self) -> (i64, i64) {
        match self {
            CoinProfile::Piecewise { breakpoints, .. } => match (breakpoints.first(), breakpoints.last()) {
                (Some(&(first, _)), Some(&(last, _))) => (first - 1, last),
                _ => (0, 0),
            },
            CoinProfile::Tanh { .. } => (0, 0),
        }
    }

    pub fn eval(&self, x: i64) -> CoinSite {
        match self {
            CoinProfile::Piecewise { limit_minus, breakpoints, .. } => {
                // number of breakpoints at or below x
                let k = breakpoints.partition_point(|&(bx, _)| bx <= x);
                if k == 0 {
                    *limit_minus
                } else {
                    breakpoints[k - 1].1
                }
            }
            CoinProfile::Tanh { a_minus, a_plus, width, phi } => {
                let t = (x as f64 / width).tanh();
                let a = 0.5 * (a_plus + a_minus) + 0.5 * (a_plus - a_minus) * t;
                tanh_site(a.clamp(-1.0, 1.0), *phi)
            }
        }
    }

    /// Piecewise-constant reduction keeping only the limits: `limit_plus` on
    /// `x >= cut`, `limit_minus` on `x <= cut - 1`.
    pub fn flatten(&self, cut: i64) -> CoinProfile {
        CoinProfile::step(self.limit_minus(), self.limit_plus(), cut)
    }

    /// Profile of the same family with the two limits exchanged; piecewise
    /// profiles collapse to a single step at 0.
    pub fn with_limits_swapped(&self) -> CoinProfile {
        match self {
            CoinProfile::Piecewise { .. } => CoinProfile::step(self.limit_plus(), self.limit_minus(), 0),
            CoinProfile::Tanh { a_minus, a_plus, width, phi } => {
                CoinProfile::Tanh { a_minus: *a_plus, a_plus: *a_minus, width: *width, phi: *phi }
            }
        }
    }

    /// Checks the piecewise invariants that the constructors cannot enforce
    /// for hand-built values.
    pub fn validate(&self) -> Result<()> {
        match self {
            CoinProfile::Piecewise { breakpoints, .. } => {
                if breakpoints.is_empty() {
                    return Err(Error::InvalidProfile("piecewise profile without breakpoints".into()));
                }
                if breakpoints.windows(2).any(|w| w[0].0 >= w[1].0) {
                    return Err(Error::InvalidProfile("breakpoints must be strictly increasing".into()));
                }
                Ok(())
            }
            CoinProfile::Tanh { width, .. } if width.is_nan() || *width <= 0.0 => {
                Err(Error::InvalidProfile(format!("tanh width must be positive, got {width}")))
            }
            CoinProfile::Tanh { .. } => Ok(()),
        }
    }

    /// True when the two profiles agree at every site in `[lo, hi]`.
    pub fn agrees_on(&self, other: &CoinProfile, lo: i64, hi: i64, tol: f64) -> bool {
        (lo..=hi).all(|x| self.eval(x).approx_eq(&other.eval(x), tol))
    }
}

fn tanh_site(a: f64, phi: f64) -> CoinSite {
    CoinSite { a, b: Complex64::from_polar((1.0 - a * a).max(0.0).sqrt(), phi) }
}

/// A split-step walk: shift scalars plus coin profile.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkSpec {
    pub shift: ShiftParams,
    pub coin: CoinProfile,
}

impl WalkSpec {
    pub fn new(shift: ShiftParams, coin: CoinProfile) -> Result<Self> {
        coin.validate()?;
        Ok(Self { shift, coin })
    }

    /// Step walk with real `q` and coin limits `b = e^{iφ} sqrt(1 - a²)`.
    pub fn step(p: f64, a_minus: f64, a_plus: f64, phi: f64) -> Result<Self> {
        let coin = CoinProfile::step(CoinSite::from_a(a_minus, phi)?, CoinSite::from_a(a_plus, phi)?, 0);
        Self::new(ShiftParams::from_p(p)?, coin)
    }

    pub fn flatten(&self, cut: i64) -> WalkSpec {
        WalkSpec { shift: self.shift, coin: self.coin.flatten(cut) }
    }
}
