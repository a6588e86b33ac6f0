//! Numerical Mellin transform of `1/(π(1 + t))` on three lines against the
//! closed form `1/sin π(β − iξ)`, then a round trip through the inverse.

use mellin_bie::mellin_core::{mellin_forward, mellin_inverse, LogGridFunction, MellinLine, XiGrid};
use num_complex::Complex64;
use std::f64::consts::PI;

fn main() -> mellin_bie::Result<()> {
    let u = LogGridFunction::from_real_fn(1e-60, 1e60, 32768, |t| 1.0 / (PI * (1.0 + t)))?;
    let xi: Vec<f64> = (-100..=100).map(|k| k as f64 * 0.1).collect();
    for beta in [0.25, 0.5, 0.75] {
        let line = MellinLine::new(beta)?;
        let f = mellin_forward(&u, line, &xi);
        let err = xi
            .iter()
            .zip(&f.value)
            .map(|(&x, v)| (v - 1.0 / (PI * Complex64::new(beta, -x)).sin()).norm())
            .fold(0.0, f64::max);
        println!(
            "beta = {beta:.2}  max |numeric - exact| = {err:.2e}  truncated = {}",
            f.truncation_warning
        );
    }

    let g = LogGridFunction::from_real_fn(1e-12, 1e12, 2048, |t| t.sqrt() * (-t).exp())?;
    let line = MellinLine::new(0.25)?;
    let grid = XiGrid::for_grid(&g);
    let spectrum = mellin_forward(&g, line, &grid.points());
    let back = mellin_inverse(&spectrum.value, &grid, line, g.t_min(), g.t_max(), g.len())?;
    let err = back.value.zip_map(&g, |a, b| a - b)?.max_abs();
    println!("round trip of sqrt(t) e^-t: max error {err:.2e}");
    Ok(())
}
