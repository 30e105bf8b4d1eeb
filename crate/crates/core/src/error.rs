use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("normalization error: {what} has squared norm {norm_sq}, expected 1")]
    Normalization { what: &'static str, norm_sq: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid coin profile: {0}")]
    InvalidProfile(String),

    #[error("symbol polynomial is identically zero")]
    ZeroPolynomial,

    #[error("symbol vanishes on the unit circle at t = {t}")]
    CircleZero { t: f64 },

    #[error("phase jump of {jump} rad at sample {index} exceeds pi/2; increase the sample count")]
    Unwrap { index: usize, jump: f64 },

    #[error("degenerate case: |p| = {p_abs} coincides with |a| = {a_abs}")]
    Degenerate { p_abs: f64, a_abs: f64 },

    #[error("window [{lo}, {hi}] is too small: {reason}")]
    WindowTooSmall { lo: i64, hi: i64, reason: String },

    #[error("conjugated operator is not block diagonal: entry of size {magnitude} at ({row}, {col})")]
    NonBlockDiagonal { row: usize, col: usize, magnitude: f64 },

    #[error("coin profile is not piecewise constant")]
    NotPiecewiseConstant,

    #[error("symbol on the {side} side has a root of modulus {modulus} on the unit circle")]
    CircleRoot { side: &'static str, modulus: f64 },

    #[error("no spectral gap around the cut {eps_cut}: eigenvalue of modulus {value}")]
    AmbiguousCut { eps_cut: f64, value: f64 },

    #[error("methods disagree: {0}")]
    MethodDisagreement(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("linear algebra failure: {0}")]
    Linalg(#[from] ndarray_linalg::error::LinalgError),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
