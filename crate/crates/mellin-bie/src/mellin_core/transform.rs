use super::grid::{Flagged, LogGridFunction, MellinLine, XiGrid, DECAY_THRESHOLD};
use crate::error::Result;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// `M_β u(ξ) = ∫ τ^{β−iξ} u(τ) dτ/τ` by the trapezoid rule in `ln τ`, at
/// arbitrary frequencies. The flag is raised when `t^β u` has not decayed at
/// the grid ends.
pub fn mellin_forward(u: &LogGridFunction, line: MellinLine, xi: &[f64]) -> Flagged<Vec<Complex64>> {
    let beta = line.beta();
    let n = u.len();
    let h = u.log_step();
    let x0 = u.x_min();
    let w: Vec<Complex64> = (0..n)
        .map(|k| {
            let end = if k == 0 || k == n - 1 { 0.5 } else { 1.0 };
            u.values()[k] * ((beta * u.x(k)).exp() * end * h)
        })
        .collect();
    let wmax = w.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let warn = wmax > 0.0 && (w[0].norm().max(w[n - 1].norm()) > DECAY_THRESHOLD * wmax);
    let value = xi
        .par_iter()
        .map(|&q| {
            let step = Complex64::from_polar(1.0, -q * h);
            let mut ph = Complex64::from_polar(1.0, -q * x0);
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, wk) in w.iter().enumerate() {
                acc += wk * ph;
                ph *= step;
                if k % 256 == 255 {
                    // re-anchor the recurrence to bound rounding drift
                    ph = Complex64::from_polar(1.0, -q * (x0 + (k + 1) as f64 * h));
                }
            }
            acc
        })
        .collect();
    Flagged {
        value,
        truncation_warning: warn,
    }
}

/// `u(t) = (1/2π) ∫ t^{iξ−β} û(ξ) dξ` by the trapezoid rule on a uniform
/// frequency grid, sampled on the geometric grid `(t_min, t_max, n)`. The flag
/// is raised when `û` has not decayed at the ends of the frequency grid.
pub fn mellin_inverse(
    uhat: &[Complex64],
    xi: &XiGrid,
    line: MellinLine,
    t_min: f64,
    t_max: f64,
    n: usize,
) -> Result<Flagged<LogGridFunction>> {
    let shape = LogGridFunction::zeros(t_min, t_max, n)?;
    if uhat.len() != xi.len() {
        return Err(crate::error::invalid("spectrum length does not match the xi grid"));
    }
    let m = xi.len();
    let dxi = xi.step();
    let umax = uhat.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let warn = umax > 0.0 && uhat[0].norm().max(uhat[m - 1].norm()) > DECAY_THRESHOLD * umax;
    let w: Vec<Complex64> = (0..m)
        .map(|k| {
            let end = if k == 0 || k == m - 1 { 0.5 } else { 1.0 };
            uhat[k] * (end * dxi / (2.0 * PI))
        })
        .collect();
    let xi0 = xi.xi(0);
    let beta = line.beta();
    let values = (0..n)
        .into_par_iter()
        .map(|j| {
            let x = shape.x(j);
            let step = Complex64::from_polar(1.0, x * dxi);
            let mut ph = Complex64::from_polar(1.0, x * xi0);
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, wk) in w.iter().enumerate() {
                acc += wk * ph;
                ph *= step;
                if k % 256 == 255 {
                    ph = Complex64::from_polar(1.0, x * xi.xi(k + 1));
                }
            }
            acc * (-beta * x).exp()
        })
        .collect();
    Ok(Flagged {
        value: shape.with_values(values)?,
        truncation_warning: warn,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_half() {
        let u = LogGridFunction::from_real_fn(1e-24, 60.0, 4000, |t| (-t).exp()).unwrap();
        let r = mellin_forward(&u, MellinLine::new(0.5).unwrap(), &[0.0]);
        assert!((r.value[0].re - PI.sqrt()).abs() < 1e-9);
        assert!(!r.truncation_warning);
    }
}
