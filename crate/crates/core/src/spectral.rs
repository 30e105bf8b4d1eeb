//! Finite-window spectral diagnostics.
//!
//! On a finite open window the index of any square matrix is zero, so zero
//! modes of the supercharge come in pairs: one at the coin interface and a
//! partner at the window edges. Modes are therefore filtered by how much of
//! their weight lies in the central half of the window. Because nearly
//! degenerate modes may come out of the eigensolver mixed, the filter is
//! applied to the whole near-zero eigenspace: the localization operator is
//! diagonalized inside it, which separates central from edge modes.

use ndarray::{s, Array1, Array2, Axis, ShapeBuilder};
use ndarray_linalg::{Eig, EigVals, EigValsh, Eigh, SVD, UPLO};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::WalkSpec;
use crate::operators::{adjoint, assemble_evolution_and_supercharge, assemble_gamma, BandedMatrix, Window};

pub const DEFAULT_HALF_WIDTH: i64 = 150;
pub const DEFAULT_EPS_CUT: f64 = 1e-6;
pub const DEFAULT_LOC_THRESHOLD: f64 = 0.9;
pub const DEFAULT_TOL_EIG: f64 = 1e-6;
pub const MIN_WINDOW_SITES: usize = 200;
/// Number of smallest `|λ|` kept in a [`SpectralEstimate`] for inspection.
const REPORTED_VALUES: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroMode {
    /// `⟨ψ, Qψ⟩`.
    pub value: f64,
    /// Probability weight in the central half of the window.
    pub weight: f64,
    /// `⟨ψ, Γψ⟩`.
    pub chirality: f64,
    pub selected: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralEstimate {
    /// Smallest `|λ|` of `Q`, ascending.
    pub near_zero_values: Vec<f64>,
    /// Every mode of the near-zero eigenspace, after localization sorting.
    pub modes: Vec<ZeroMode>,
    pub estimated_index: i32,
    /// Distance of the raw chirality sum from `estimated_index`.
    pub residual: f64,
    pub window: Window,
}

impl SpectralEstimate {
    pub fn selected(&self) -> impl Iterator<Item = &ZeroMode> {
        self.modes.iter().filter(|m| m.selected)
    }
}

/// Weight of each basis index in the central half of the window.
fn central_mask(w: &Window, components: usize) -> Array1<f64> {
    let (lo, hi) = w.central_half();
    Array1::from_shape_fn(w.sites() * components, |i| {
        let x = w.site_at(i / components);
        if (lo..=hi).contains(&x) {
            1.0
        } else {
            0.0
        }
    })
}

/// Hermitian eigendecomposition. The matrix is copied to column-major order
/// first: on row-major input `Eigh` returns the conjugated eigenvectors.
fn hermitian_eigh(m: &Array2<Complex64>) -> Result<(Array1<f64>, Array2<Complex64>)> {
    let mut f = Array2::zeros(m.dim().f());
    f.assign(m);
    Ok(f.eigh(UPLO::Upper)?)
}

fn inner(u: &Array1<Complex64>, v: &Array1<Complex64>) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// Orthonormal basis of the span of `vectors` (columns), by twice-iterated
/// modified Gram-Schmidt; nearly dependent columns are dropped.
fn orthonormal_span(vectors: &Array2<Complex64>) -> Array2<Complex64> {
    let mut basis: Vec<Array1<Complex64>> = Vec::new();
    for col in vectors.axis_iter(Axis(1)) {
        let mut v = col.to_owned();
        let original = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        for _ in 0..2 {
            for b in &basis {
                let proj = inner(b, &v);
                v.zip_mut_with(b, |x, y| *x -= proj * y);
            }
        }
        let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 * original.max(f64::MIN_POSITIVE) {
            basis.push(v.mapv(|c| c / norm));
        }
    }
    let mut out = Array2::zeros((vectors.nrows(), basis.len()));
    for (j, b) in basis.into_iter().enumerate() {
        out.column_mut(j).assign(&b);
    }
    out
}

/// Rotates an orthonormal basis so that each column has a definite weight in
/// the region selected by `mask`. Returns `(weights, rotated basis)`.
fn sort_by_localization(basis: &Array2<Complex64>, mask: &Array1<f64>) -> Result<(Array1<f64>, Array2<Complex64>)> {
    if basis.ncols() == 0 {
        return Ok((Array1::zeros(0), basis.clone()));
    }
    let masked = basis * &mask.mapv(|m| Complex64::new(m, 0.0)).insert_axis(Axis(1));
    let loc = adjoint(basis).dot(&masked);
    let (weights, rot) = hermitian_eigh(&loc)?;
    Ok((weights, basis.dot(&rot)))
}

fn check_window(spec: &WalkSpec, w: &Window) -> Result<()> {
    if w.sites() < MIN_WINDOW_SITES {
        return Err(Error::WindowTooSmall {
            lo: w.lo,
            hi: w.hi,
            reason: format!("spectral estimates need at least {MIN_WINDOW_SITES} sites"),
        });
    }
    let third = (w.hi - w.lo) / 3;
    let (first, last) = spec.coin.interface_span();
    if first < w.lo + third || last > w.hi - third {
        return Err(Error::WindowTooSmall {
            lo: w.lo,
            hi: w.hi,
            reason: format!("coin interface [{first}, {last}] is outside the central third"),
        });
    }
    Ok(())
}

/// Witten index estimated as the total chirality of the centrally localized
/// near-zero modes of the supercharge `Q`.
pub fn index_by_chirality(spec: &WalkSpec, w: &Window, eps_cut: f64, loc_threshold: f64) -> Result<SpectralEstimate> {
    check_window(spec, w)?;
    let (_, q) = assemble_evolution_and_supercharge(spec, w);
    let gamma = assemble_gamma(&spec.shift, w);
    let (values, vectors) = hermitian_eigh(&q.data)?;

    if let Some(v) = values.iter().map(|v| v.abs()).find(|v| *v >= 0.5 * eps_cut && *v < 2.0 * eps_cut) {
        return Err(Error::AmbiguousCut { eps_cut, value: v });
    }
    let mut magnitudes: Vec<f64> = values.iter().map(|v| v.abs()).collect();
    magnitudes.sort_by(f64::total_cmp);
    magnitudes.truncate(REPORTED_VALUES);

    let near: Vec<usize> = (0..values.len()).filter(|&i| values[i].abs() < eps_cut).collect();
    let span = vectors.select(Axis(1), &near);
    let (weights, rotated) = sort_by_localization(&span, &central_mask(w, 2))?;

    let modes: Vec<ZeroMode> = rotated
        .axis_iter(Axis(1))
        .zip(weights.iter())
        .map(|(psi, &weight)| {
            let psi = psi.to_owned();
            ZeroMode {
                value: inner(&psi, &q.data.dot(&psi)).re,
                weight,
                chirality: inner(&psi, &gamma.data.dot(&psi)).re,
                selected: weight > loc_threshold,
            }
        })
        .collect();
    let total: f64 = modes.iter().filter(|m| m.selected).map(|m| m.chirality).sum();
    let estimated_index = total.round() as i32;
    Ok(SpectralEstimate {
        near_zero_values: magnitudes,
        modes,
        estimated_index,
        residual: (total - estimated_index as f64).abs(),
        window: *w,
    })
}

/// The `k` smallest singular values, ascending.
pub fn near_kernel_svd(mat: &BandedMatrix, k: usize) -> Result<Vec<f64>> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let (_, s, _) = mat.data.svd(false, false)?;
    let mut values = s.to_vec();
    values.sort_by(f64::total_cmp);
    values.truncate(k);
    Ok(values)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeMode {
    pub eigenvalue: Complex64,
    /// Probability weight in the central half of the window.
    pub localization: f64,
}

impl EdgeMode {
    /// Distance to the nearer of `±1`.
    pub fn distance_to_unit(&self) -> f64 {
        (self.eigenvalue - 1.0).norm().min((self.eigenvalue + 1.0).norm())
    }
}

/// Eigenvectors of the evolution `U` with eigenvalue within `tol_eig` of
/// `+1` or `-1`, each with its central localization weight.
pub fn edge_state_detector(spec: &WalkSpec, w: &Window, tol_eig: f64) -> Result<Vec<EdgeMode>> {
    let (u, _) = assemble_evolution_and_supercharge(spec, w);
    let (values, vectors) = u.data.eig()?;
    let mask = central_mask(w, 2);
    let mut found = Vec::new();
    for target in [1.0, -1.0] {
        let cluster: Vec<usize> = (0..values.len()).filter(|&i| (values[i] - target).norm() < tol_eig).collect();
        if cluster.is_empty() {
            continue;
        }
        let span = orthonormal_span(&vectors.select(Axis(1), &cluster));
        let (weights, rotated) = sort_by_localization(&span, &mask)?;
        for (j, &localization) in weights.iter().enumerate() {
            let psi = rotated.slice(s![.., j]).to_owned();
            found.push(EdgeMode { eigenvalue: inner(&psi, &u.data.dot(&psi)), localization });
        }
    }
    Ok(found)
}

/// Full spectra of `U` (sorted by argument) and `Q` (ascending) on a window.
pub fn spectra(spec: &WalkSpec, w: &Window) -> Result<(Vec<Complex64>, Vec<f64>)> {
    let (u, q) = assemble_evolution_and_supercharge(spec, w);
    let mut u_values = u.data.eigvals()?.to_vec();
    u_values.sort_by(|x, y| x.arg().total_cmp(&y.arg()).then(x.norm().total_cmp(&y.norm())));
    let q_values = q.data.eigvalsh(UPLO::Upper)?.to_vec();
    Ok((u_values, q_values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{CoinProfile, CoinSite, ShiftParams};
    use crate::operators::{assemble_toeplitz, TrigPoly};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn default_window() -> Window {
        Window::symmetric(DEFAULT_HALF_WIDTH).unwrap()
    }

    #[test]
    fn eigh_vectors_are_eigenvectors_of_complex_input() {
        // [[0, i], [-i, 0]] has eigenvector (1, -i)/√2 for +1; the conjugate is the -1 vector
        let m = ndarray::array![[c(0.0, 0.0), c(0.0, 1.0)], [c(0.0, -1.0), c(0.0, 0.0)]];
        let (values, vectors) = hermitian_eigh(&m).unwrap();
        for k in 0..2 {
            let v = vectors.column(k).to_owned();
            let r = m.dot(&v) - v.mapv(|z| z * values[k]);
            assert!(r.iter().all(|z| z.norm() < 1e-14), "{values:?}");
        }
    }

    #[test]
    fn svd_of_identity_and_shift() {
        let id = assemble_toeplitz(&TrigPoly::constant(c(1.0, 0.0)), 10).unwrap();
        assert_eq!(near_kernel_svd(&id, 3).unwrap(), vec![1.0; 3]);
        let shift = assemble_toeplitz(&TrigPoly::monomial(1, c(1.0, 0.0)), 100).unwrap();
        let s = near_kernel_svd(&shift, 2).unwrap();
        assert!(s[0] < 1e-14);
        assert!((s[1] - 1.0).abs() < 1e-12);
        assert!(near_kernel_svd(&shift, 0).is_err());
    }

    #[test]
    fn homogeneous_has_no_selected_modes() {
        let spec = WalkSpec::step(0.5, 0.1, 0.1, 0.0).unwrap();
        let est = index_by_chirality(&spec, &default_window(), DEFAULT_EPS_CUT, DEFAULT_LOC_THRESHOLD).unwrap();
        assert_eq!(est.estimated_index, 0);
        assert_eq!(est.selected().count(), 0);
    }

    #[test]
    fn step_index_plus_one() {
        let spec = WalkSpec::step(0.5, 0.9, 0.0, 0.0).unwrap();
        let est = index_by_chirality(&spec, &default_window(), DEFAULT_EPS_CUT, DEFAULT_LOC_THRESHOLD).unwrap();
        assert_eq!(est.estimated_index, 1);
        assert!(est.residual < 0.05);
        for m in est.selected() {
            assert!(m.chirality.abs() <= 1.0 + 1e-9);
        }
    }

    #[test]
    fn tanh_matches_flattened() {
        let shift = ShiftParams::from_p(0.5).unwrap();
        let spec = WalkSpec::new(shift, CoinProfile::tanh(0.9, 0.0, 6.0, 0.0).unwrap()).unwrap();
        let est = index_by_chirality(&spec, &default_window(), DEFAULT_EPS_CUT, DEFAULT_LOC_THRESHOLD).unwrap();
        let flat = index_by_chirality(&spec.flatten(0), &default_window(), DEFAULT_EPS_CUT, DEFAULT_LOC_THRESHOLD).unwrap();
        assert_eq!(est.estimated_index, 1);
        assert_eq!(est.estimated_index, flat.estimated_index);
    }

    #[test]
    fn window_preconditions() {
        let spec = WalkSpec::step(0.5, 0.9, 0.0, 0.0).unwrap();
        let small = Window::symmetric(50).unwrap();
        assert!(matches!(index_by_chirality(&spec, &small, 1e-6, 0.9), Err(Error::WindowTooSmall { .. })));
        let off_centre = Window::open(0, 300).unwrap();
        assert!(matches!(index_by_chirality(&spec, &off_centre, 1e-6, 0.9), Err(Error::WindowTooSmall { .. })));
    }

    #[test]
    fn edge_state_for_nonzero_index() {
        let spec = WalkSpec::step(0.5, 0.9, 0.0, 0.0).unwrap();
        let modes = edge_state_detector(&spec, &default_window(), DEFAULT_TOL_EIG).unwrap();
        assert!(modes.iter().any(|m| m.localization > 0.9 && m.distance_to_unit() < 1e-6), "{modes:?}");
    }

    #[test]
    fn no_central_state_for_equal_limits() {
        let site = CoinSite::from_a(0.2, 0.5).unwrap();
        let spec = WalkSpec::new(ShiftParams::from_p(-0.6).unwrap(), CoinProfile::homogeneous(site)).unwrap();
        let modes = edge_state_detector(&spec, &default_window(), 1e-3).unwrap();
        assert!(modes.iter().all(|m| m.localization < 0.5), "{modes:?}");
    }

    #[test]
    fn gram_schmidt_drops_dependent_columns() {
        let mut v = Array2::zeros((4, 3));
        v[[0, 0]] = c(1.0, 0.0);
        v[[1, 1]] = c(0.0, 2.0);
        v[[0, 2]] = c(3.0, 0.0);
        let basis = orthonormal_span(&v);
        assert_eq!(basis.ncols(), 2);
        let gram = adjoint(&basis).dot(&basis);
        assert!((gram[[0, 1]]).norm() < 1e-15 && (gram[[1, 1]] - 1.0).norm() < 1e-15);
    }
}
