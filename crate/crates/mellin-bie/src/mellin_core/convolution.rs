use super::grid::{Flagged, LogGridFunction, DECAY_THRESHOLD};
use super::kernel::{check_admissible, KernelTerm, MeromorphicKernel};
use crate::error::{invalid, Error, Result};
use crate::numerics::spline::UniformSpline;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// `c0 I + c1 S + K` with `S u(t) = (1/πi) PV∫ u(τ) dτ/(τ − t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MellinOperator {
    pub kernel: MeromorphicKernel,
    pub c0: Complex64,
    pub c1: Complex64,
}

impl MellinOperator {
    pub fn new(kernel: MeromorphicKernel, c0: Complex64, c1: Complex64) -> Self {
        MellinOperator { kernel, c0, c1 }
    }

    /// `K¹_c` with unit coefficient.
    pub fn k1(c: Complex64) -> Self {
        Self::new(
            MeromorphicKernel::k1(c, Complex64::new(1.0, 0.0)),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        )
    }

    pub fn apply(&self, u: &LogGridFunction) -> Result<Flagged<LogGridFunction>> {
        apply_mellin_convolution(&self.kernel, self.c0, self.c1, u)
    }
}

/// Regular part of `d/(e^σ − ρ)` after removing `(d/ρ)/(σ − ln ρ)`.
fn regular_part(d: Complex64, rho: f64, delta: f64) -> Complex64 {
    let r = d / rho;
    if delta.abs() < 1e-3 {
        r * (-0.5 + delta / 12.0 - delta.powi(3) / 720.0)
    } else {
        r * (1.0 / delta.exp_m1() - 1.0 / delta)
    }
}

/// Quadrature evaluation of `c0 u + (c1/πi) PV∫ u(τ)dτ/(τ − t) + ∫ K(t/τ) u(τ) dτ/τ`
/// at every node, by the trapezoid rule in `ln τ`.
///
/// Poles of the kernel on the positive axis (and the Cauchy term, which is the
/// pole `c = 1`) are principal values: the singular part `R/(y* − y)` is
/// integrated after subtracting `u(y*) e^{−(y−y*)²}`, whose principal value
/// vanishes by symmetry, and the subtracted sum runs over a node set extended
/// symmetrically around `y*`.
pub fn apply_mellin_convolution(
    kernel: &MeromorphicKernel,
    c0: Complex64,
    c1: Complex64,
    u: &LogGridFunction,
) -> Result<Flagged<LogGridFunction>> {
    if !check_admissible(kernel)? {
        return Err(invalid("kernel is not admissible"));
    }
    if u.values().iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::Evaluation("non-finite samples in PV quadrature input".into()));
    }
    let mut terms: Vec<KernelTerm> = kernel.terms.clone();
    if c1 != Complex64::new(0.0, 0.0) {
        terms.push(KernelTerm::new(
            c1 * Complex64::new(0.0, 1.0) / PI,
            Complex64::new(1.0, 0.0),
            1,
        ));
    }
    let (pv, regular): (Vec<KernelTerm>, Vec<KernelTerm>) = terms.into_iter().partition(|k| k.pole_on_positive_axis());
    let n = u.len();
    let h = u.log_step();
    let xs: Vec<f64> = (0..n).map(|k| u.x(k)).collect();
    let vals = u.values();
    let spline = if pv.is_empty() {
        None
    } else {
        Some(UniformSpline::new(xs[0], h, vals.to_vec()))
    };
    let endw = |j: usize| if j == 0 || j == n - 1 { 0.5 } else { 1.0 };

    let out: Vec<Complex64> = (0..n)
        .into_par_iter()
        .map(|i| {
            let xi = xs[i];
            let mut acc = c0 * vals[i];
            if !regular.is_empty() {
                let mut s = Complex64::new(0.0, 0.0);
                for j in 0..n {
                    let r = Complex64::new((xi - xs[j]).exp(), 0.0);
                    let mut kv = Complex64::new(0.0, 0.0);
                    for k in &regular {
                        kv += k.d / (r - k.c).powu(k.m);
                    }
                    s += kv * vals[j] * endw(j);
                }
                acc += s * h;
            }
            for k in &pv {
                acc += pv_term(k, xi, &xs, vals, h, spline.as_ref().unwrap());
            }
            acc
        })
        .collect();
    let warn = !u.decays(DECAY_THRESHOLD);
    Ok(Flagged {
        value: u.with_values(out)?,
        truncation_warning: warn,
    })
}

fn pv_term(
    k: &KernelTerm,
    xi: f64,
    xs: &[f64],
    vals: &[Complex64],
    h: f64,
    spline: &UniformSpline<Complex64>,
) -> Complex64 {
    let n = xs.len();
    let rho = k.c.re;
    let s0 = rho.ln();
    let r = k.d / rho;
    let ystar = xi - s0;
    let x_lo = xs[0];
    let x_hi = xs[n - 1];
    let inside = ystar >= x_lo && ystar <= x_hi;
    let ustar = if inside {
        spline.eval(ystar)
    } else {
        Complex64::new(0.0, 0.0)
    };
    let endw = |j: usize| if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let y = xs[j];
        let delta = xi - y - s0; // = y* − y
        acc += regular_part(k.d, rho, delta) * vals[j] * endw(j);
    }
    // singular part: R Σ [u_j − u* g_j]/(y* − y_j) over a node set extended
    // beyond the grid (u = 0 there) so the Gaussian sum stays symmetric
    const REACH: f64 = 9.0;
    let j_lo = ((ystar - REACH - x_lo) / h).floor() as i64;
    let j_hi = ((ystar + REACH - x_lo) / h).ceil() as i64;
    let mut sing = Complex64::new(0.0, 0.0);
    for j in 0..n as i64 {
        if j >= j_lo && j <= j_hi {
            continue;
        }
        let ju = j as usize;
        sing += vals[ju] * endw(ju) / (ystar - xs[ju]);
    }
    for j in j_lo..=j_hi {
        let y = x_lo + j as f64 * h;
        let uj = if j >= 0 && (j as usize) < n {
            vals[j as usize] * endw(j as usize)
        } else {
            Complex64::new(0.0, 0.0)
        };
        let dy = ystar - y;
        if dy.abs() < 1e-9 * h {
            let du = if inside {
                spline.deriv(ystar)
            } else {
                Complex64::new(0.0, 0.0)
            };
            sing += -du;
        } else {
            let g = (-(dy * dy)).exp();
            sing += (uj - ustar * g) / dy;
        }
    }
    (acc + r * sing) * h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_operator() {
        let u = LogGridFunction::from_real_fn(1e-3, 1e3, 50, |t| t / (1.0 + t * t)).unwrap();
        let r = apply_mellin_convolution(
            &MeromorphicKernel::zero(),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            &u,
        )
        .unwrap();
        assert_eq!(r.value, u);
    }
}
