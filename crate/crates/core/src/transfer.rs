//! Exact kernel dimensions of `Q_{ε,+}` and its adjoint for piecewise-constant
//! coins.
//!
//! `Q_{ε,+}ψ = 0` is the three-term recurrence
//! `c2(x) ψ(x+1) + c1(x) ψ(x) + c0(x) ψ(x-1) = 0`. Outside the interface rows
//! the coefficients are those of the boundary symbols, whose solutions are
//! spanned by geometric modes `z^x` with `z` a root of `z·F`. A kernel vector
//! is a solution built from modes decaying to the right (`|z| < 1` in the
//! `+` region) that also matches modes decaying to the left (`|z| > 1` in the
//! `−` region) across the interface.

use ndarray::{Array2, ArrayView2};
use ndarray_linalg::SVD;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::WalkSpec;
use crate::symbol::{band_row, SymbolPoly};
use crate::symbol::Side;
use crate::winding::roots_closed_form;

pub const DEFAULT_MATCH_TOL: f64 = 1e-8;

type Row = [Complex64; 3];
const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Three-term recurrence with constant coefficients on `x < start` and
/// `x >= end`, and explicit rows `[c2, c1, c0]` for `start <= x < end`.
#[derive(Debug, Clone, PartialEq)]
pub struct Recurrence {
    pub left: Row,
    pub right: Row,
    pub start: i64,
    pub rows: Vec<Row>,
}

impl Recurrence {
    /// Band recurrence of `Q_{ε,+}` for a piecewise-constant coin.
    pub fn q_plus(spec: &WalkSpec) -> Result<Self> {
        if !spec.coin.is_piecewise_constant() {
            return Err(Error::NotPiecewiseConstant);
        }
        let (start, end) = spec.coin.interface_span();
        let minus = spec.coin.limit_minus();
        let plus = spec.coin.limit_plus();
        let rows = (start..end).map(|x| band_row(&spec.shift, spec.coin.eval(x), spec.coin.eval(x + 1))).collect();
        Ok(Self { left: band_row(&spec.shift, minus, minus), right: band_row(&spec.shift, plus, plus), start, rows })
    }

    pub fn end(&self) -> i64 {
        self.start + self.rows.len() as i64
    }

    pub fn row(&self, x: i64) -> Row {
        if x < self.start {
            self.left
        } else if x >= self.end() {
            self.right
        } else {
            self.rows[(x - self.start) as usize]
        }
    }

    /// Recurrence of the conjugate-transpose band: the adjoint's row `x` has
    /// superdiagonal `conj(c0(x+1))`, diagonal `conj(c1(x))` and subdiagonal
    /// `conj(c2(x-1))`.
    pub fn adjoint(&self) -> Self {
        let flip = |r: Row| [r[2].conj(), r[1].conj(), r[0].conj()];
        let rows = (self.start - 1..self.end() + 1)
            .map(|x| [self.row(x + 1)[2].conj(), self.row(x)[1].conj(), self.row(x - 1)[0].conj()])
            .collect();
        Self { left: flip(self.left), right: flip(self.right), start: self.start - 1, rows }
    }

    /// True when every interface row has nonzero outer coefficients, so that
    /// 2×2 transfer matrices exist and are invertible.
    pub fn is_regular(&self) -> bool {
        self.rows.iter().all(|r| r[0] != ZERO && r[2] != ZERO)
    }
}

/// ℓ² solutions on a half-line `[s, ∞)` of the constant recurrence with
/// coefficients `row`, given by their values at offsets `0` and `1`, plus the
/// moduli of the decaying roots used.
fn decaying_modes(row: Row, tol: f64, side: Side) -> Result<(Vec<[Complex64; 2]>, Vec<f64>)> {
    let sym = SymbolPoly::new(row[0], row[1], row[2], side);
    let roots = roots_closed_form(&sym)?;
    if let Some(z) = roots.iter().find(|z| (z.norm() - 1.0).abs() < tol) {
        return Err(Error::CircleRoot { side: side.name(), modulus: z.norm() });
    }
    let inside: Vec<Complex64> = roots.into_iter().filter(|z| z.norm() < 1.0).collect();
    let moduli = inside.iter().map(|z| z.norm()).collect();
    let basis = match inside.as_slice() {
        // both roots decay: every pair of initial values does, including
        // coincident roots (modes z^x and x z^{x-1}) and the zero root (δ modes)
        [_, _] => vec![[ONE, ZERO], [ZERO, ONE]],
        [z] => {
            let norm = (1.0 + z.norm_sqr()).sqrt();
            vec![[ONE / norm, z / norm]]
        }
        _ => Vec::new(),
    };
    Ok((basis, moduli))
}

/// Left tail `x <= s`: reflect `y = s - x`, which reverses the coefficients.
/// Returned pairs are `(ψ(s), ψ(s-1))`; moduli are of `z = 1/w`.
fn left_modes(row: Row, tol: f64) -> Result<(Vec<[Complex64; 2]>, Vec<f64>)> {
    let (basis, moduli) = decaying_modes([row[2], row[1], row[0]], tol, Side::Minus)?;
    Ok((basis, moduli.into_iter().map(|m| if m == 0.0 { f64::INFINITY } else { 1.0 / m }).collect()))
}

/// Which matching procedure produced a count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchingRoute {
    /// Decaying subspaces propagated across the interface by 2×2 transfer matrices.
    Transfer,
    /// Interface rows solved directly as a finite linear system.
    Substitution,
}

fn rank(m: ArrayView2<Complex64>, tol: f64) -> Result<usize> {
    if m.is_empty() {
        return Ok(0);
    }
    let (_, s, _) = m.to_owned().svd(false, false)?;
    let top = s.iter().cloned().fold(0.0, f64::max);
    Ok(s.iter().filter(|&&v| v > tol * top.max(1.0)).count())
}

fn normalize(v: [Complex64; 2]) -> [Complex64; 2] {
    let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    if n == 0.0 {
        v
    } else {
        [v[0] / n, v[1] / n]
    }
}

/// Dimension of the ℓ² solution space of `rec`.
pub fn solution_dimension(rec: &Recurrence, tol: f64, route: MatchingRoute) -> Result<(usize, Vec<f64>)> {
    let (right, right_moduli) = decaying_modes(rec.right, tol, Side::Plus)?;
    let (left, left_moduli) = left_modes(rec.left, tol)?;
    let mut moduli = right_moduli;
    moduli.extend(left_moduli);
    let dim = match route {
        MatchingRoute::Transfer => match_by_transfer(rec, &left, &right, tol)?,
        MatchingRoute::Substitution => match_by_substitution(rec, &left, &right, tol)?,
    };
    Ok((dim, moduli))
}

/// Propagates each state through the interface rows, returning the states at
/// every site from `start` to `end`. `forward` maps `v(x)` to `v(x+1)`,
/// otherwise `v(x+1)` to `v(x)`, with `v(x) = (ψ(x), ψ(x-1))`.
fn sweep_states(rec: &Recurrence, initial: &[[Complex64; 2]], forward: bool) -> Vec<Vec<[Complex64; 2]>> {
    let n = rec.rows.len();
    let mut out = vec![Vec::new(); n + 1];
    let first = if forward { 0 } else { n };
    out[first] = initial.to_vec();
    for step in 0..n {
        let (from, to, row) = if forward { (step, step + 1, step) } else { (n - step, n - step - 1, n - step - 1) };
        let [c2, c1, c0] = rec.rows[row];
        out[to] = out[from]
            .iter()
            .map(|v| {
                // a full two-dimensional span is invariant, only single modes move
                if initial.len() == 2 {
                    *v
                } else if forward {
                    normalize([-(c1 * v[0] + c0 * v[1]) / c2, v[0]])
                } else {
                    normalize([v[1], -(c2 * v[0] + c1 * v[1]) / c0])
                }
            })
            .collect();
    }
    out
}

/// Left modes are carried right and right modes left; the two subspaces are
/// compared at every site in between. Carrying a mode against its growth
/// direction loses accuracy at the rate the interface amplifies, so the count
/// is taken from the best meeting point, which is the largest nullity seen.
fn match_by_transfer(rec: &Recurrence, left: &[[Complex64; 2]], right: &[[Complex64; 2]], tol: f64) -> Result<usize> {
    if !rec.is_regular() {
        return Err(Error::InvalidInput("transfer matrices need nonzero outer band coefficients".into()));
    }
    if left.is_empty() || right.is_empty() {
        return Ok(0);
    }
    // left modes give v(start) directly; right modes are (ψ(end-1), ψ(end))
    let from_left = sweep_states(rec, left, true);
    let right_end: Vec<_> = right.iter().map(|v| [v[1], v[0]]).collect();
    let from_right = sweep_states(rec, &right_end, false);
    let mut best = 0;
    for (l, r) in from_left.iter().zip(&from_right) {
        let columns: Vec<[Complex64; 2]> = r.iter().chain(l).copied().collect();
        let m = Array2::from_shape_fn((2, columns.len()), |(i, j)| columns[j][i]);
        best = best.max(columns.len() - rank(m.view(), tol)?);
    }
    Ok(best)
}

fn match_by_substitution(
    rec: &Recurrence,
    left: &[[Complex64; 2]],
    right: &[[Complex64; 2]],
    tol: f64,
) -> Result<usize> {
    let (start, end) = (rec.start, rec.end());
    // unknowns: ψ on [start-1, end], then right amplitudes, then left amplitudes
    let core = (end - start + 2) as usize;
    let idx = |x: i64| (x - (start - 1)) as usize;
    let cols = core + right.len() + left.len();
    let mut m = Array2::<Complex64>::zeros((rec.rows.len() + 4, cols));
    for (k, x) in (start..end).enumerate() {
        let [c2, c1, c0] = rec.row(x);
        m[[k, idx(x + 1)]] = c2;
        m[[k, idx(x)]] = c1;
        m[[k, idx(x - 1)]] = c0;
    }
    let base = rec.rows.len();
    m[[base, idx(end - 1)]] = ONE;
    m[[base + 1, idx(end)]] = ONE;
    for (j, v) in right.iter().enumerate() {
        m[[base, core + j]] = -v[0];
        m[[base + 1, core + j]] = -v[1];
    }
    m[[base + 2, idx(start)]] = ONE;
    m[[base + 3, idx(start - 1)]] = ONE;
    for (j, v) in left.iter().enumerate() {
        m[[base + 2, core + right.len() + j]] = -v[0];
        m[[base + 3, core + right.len() + j]] = -v[1];
    }
    Ok(cols - rank(m.view(), tol)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelCount {
    pub dim_ker: usize,
    pub dim_coker: usize,
    pub witten: i32,
    /// Moduli of the decaying modes used for the kernel of `Q_{ε,+}`.
    pub decay_rates: Vec<f64>,
    pub route: MatchingRoute,
}

impl KernelCount {
    /// Kernel and cokernel both nontrivial; not excluded by the index theory,
    /// reported for inspection only.
    pub fn both_sides_nontrivial(&self) -> bool {
        self.dim_ker > 0 && self.dim_coker > 0
    }
}

/// `dim ker Q_{ε,+}`, `dim ker Q_{ε,+}*` and their difference for a
/// piecewise-constant coin. Uses transfer matrices when every interface row
/// is regular, direct substitution otherwise.
pub fn kernel_by_matching(spec: &WalkSpec, tol: f64) -> Result<KernelCount> {
    let rec = Recurrence::q_plus(spec)?;
    let adj = rec.adjoint();
    let route = if rec.is_regular() && adj.is_regular() { MatchingRoute::Transfer } else { MatchingRoute::Substitution };
    kernel_with_route(&rec, &adj, tol, route)
}

/// As [`kernel_by_matching`] with an explicit route.
pub fn kernel_with_route(rec: &Recurrence, adj: &Recurrence, tol: f64, route: MatchingRoute) -> Result<KernelCount> {
    let (dim_ker, decay_rates) = solution_dimension(rec, tol, route)?;
    let (dim_coker, _) = solution_dimension(adj, tol, route)?;
    Ok(KernelCount { dim_ker, dim_coker, witten: dim_ker as i32 - dim_coker as i32, decay_rates, route })
}
