use super::{decouple, finish, recompose, Method, ModelSystemInstance, SolveOptions, SystemSolution};
use crate::error::{Error, Result};
use crate::mellin_core::SpectralMultiplier;
use crate::numerics::trig::csc;
use num_complex::Complex64;
use std::f64::consts::PI;

/// `k(ξ) = 1/sin π(β − iξ)`, the Mellin symbol of `K¹_{−1}` on the line `β`.
fn k_symbol(beta: f64, xi: f64) -> Complex64 {
    csc(PI * Complex64::new(beta, -xi))
}

/// `min_ξ |1 − k(ξ)|` over a dense sample; the minimum sits at `ξ = 0`, where
/// it equals `|1 − 1/sin πβ|` and vanishes only for `β = 1/2`.
pub fn minus_symbol_min(beta: f64) -> f64 {
    (-4000..=4000)
        .map(|k| (1.0 - k_symbol(beta, k as f64 * 5e-3)).norm())
        .fold(f64::INFINITY, f64::min)
}

fn plus_symbol_min(beta: f64) -> f64 {
    (-4000..=4000)
        .map(|k| (1.0 + k_symbol(beta, k as f64 * 5e-3)).norm())
        .fold(f64::INFINITY, f64::min)
}

/// Diagonal solve: `û± = (G ± H)^ / (1 ± k)` on the instance line by
/// zero-padded FFT, then recomposition.
pub fn solve_mellin(instance: &ModelSystemInstance, opts: &SolveOptions) -> Result<SystemSolution> {
    let start = opts.record_timings.then(std::time::Instant::now);
    let beta = instance.line.beta();
    if minus_symbol_min(beta) < 1e-8 {
        return Err(Error::NonEllipticLine {
            beta,
            hint: "1 − 1/sin π(β − iξ) vanishes at ξ = 0; choose β ≠ 1/2 (default 1/4)".into(),
        });
    }
    if plus_symbol_min(beta) < 1e-8 {
        return Err(Error::NonEllipticLine {
            beta,
            hint: "1 + 1/sin π(β − iξ) vanishes on this line".into(),
        });
    }
    let rhs = decouple(instance)?;
    let fft = SpectralMultiplier::new(opts.padding)?;
    let u_plus = fft.apply(&rhs.plus, beta, beta, |xi| 1.0 / (1.0 + k_symbol(beta, xi)))?;
    let u_minus = fft.apply(&rhs.minus, beta, beta, |xi| 1.0 / (1.0 - k_symbol(beta, xi)))?;
    let (phi, psi) = recompose(&u_plus, &u_minus)?;
    finish(instance, phi, psi, Method::MellinDiagonal, opts, start, None)
}
