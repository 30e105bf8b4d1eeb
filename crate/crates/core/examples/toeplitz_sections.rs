//! Finite sections of Toeplitz operators: a symbol of winding k leaves |k|
//! singular values that vanish exponentially in the section size.

use num_complex::Complex64;
use splitstep::operators::{assemble_toeplitz, TrigPoly};
use splitstep::spectral::near_kernel_svd;

fn main() -> splitstep::Result<()> {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let symbols = [
        ("z - 0.5", TrigPoly::from_roots(c(1.0, 0.0), 0, &[c(0.5, 0.0)])),
        ("(z - 0.3i)(z + 0.6)", TrigPoly::from_roots(c(1.0, 0.0), 0, &[c(0.0, 0.3), c(-0.6, 0.0)])),
        ("z^-1 (z - 2)", TrigPoly::from_roots(c(1.0, 0.0), -1, &[c(2.0, 0.0)])),
        ("z^-2", TrigPoly::monomial(-2, c(1.0, 0.0))),
    ];
    for (name, h) in symbols {
        for n in [50, 200, 400] {
            let s = near_kernel_svd(&assemble_toeplitz(&h, n)?, 3)?;
            let s: Vec<String> = s.iter().map(|v| format!("{v:.3e}")).collect();
            println!("{name:>20}, n = {n:>3}: smallest singular values {}", s.join(", "));
        }
    }
    Ok(())
}
