//! Structural identities of the assembled operators on a periodic window:
//! Γ² = 1, C² = 1, U unitary, ΓUΓ = U*, and Q = (U - U*)/2i anticommuting with Γ.

use ndarray::Array2;
use num_complex::Complex64;
use splitstep::operators::{adjoint, assemble_coin, assemble_evolution_and_supercharge, assemble_gamma};
use splitstep::{WalkSpec, Window};

fn max_abs(m: &Array2<Complex64>) -> f64 {
    m.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

fn main() -> splitstep::Result<()> {
    let walk = WalkSpec::step(0.3, -0.7, 0.6, 1.1)?;
    let w = Window::periodic(-20, 20)?;
    let gamma = assemble_gamma(&walk.shift, &w).data;
    let coin = assemble_coin(&walk.coin, &w).data;
    let (u, q) = assemble_evolution_and_supercharge(&walk, &w);
    let id = Array2::<Complex64>::eye(gamma.nrows());
    println!("|Γ² - 1|      = {:.1e}", max_abs(&(gamma.dot(&gamma) - &id)));
    println!("|C² - 1|      = {:.1e}", max_abs(&(coin.dot(&coin) - &id)));
    println!("|U*U - 1|     = {:.1e}", max_abs(&(adjoint(&u.data).dot(&u.data) - &id)));
    println!("|ΓUΓ - U*|    = {:.1e}", max_abs(&(gamma.dot(&u.data).dot(&gamma) - adjoint(&u.data))));
    println!("|ΓQ + QΓ|     = {:.1e}", max_abs(&(gamma.dot(&q.data) + q.data.dot(&gamma))));
    println!("|Q - Q*|      = {:.1e}", max_abs(&(&q.data - &adjoint(&q.data))));
    Ok(())
}
