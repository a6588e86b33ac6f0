//! Adaptive Gauss–Kronrod (7/15) quadrature on finite intervals and on the
//! real line.

use num_complex::Complex64;
use std::ops::{Add, Mul, Sub};

/// Values that can be integrated.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Tolerances and effort limit for the adaptive integrators.
#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            abs_tol: 1e-13,
            rel_tol: 1e-11,
            max_intervals: 4000,
        }
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: f64,
    pub converged: bool,
}

fn gk15<T: QuadValue, F: Fn(f64) -> T>(f: &F, a: f64, b: f64) -> (T, f64) {
    let c = 0.5 * (a + b);
    let hl = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = hl * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kron = kron + s * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + s * WG[j / 2];
        }
    }
    let k = kron * hl;
    let g = gauss * hl;
    (k, (k - g).magnitude())
}

/// Adaptive integral of `f` over `[a, b]`, bisecting the interval with the
/// largest error estimate until the global tolerance is met.
pub fn integrate<T: QuadValue, F: Fn(f64) -> T>(f: F, a: f64, b: f64, opts: QuadOptions) -> QuadResult<T> {
    integrate_panels(&f, &[(a, b)], opts)
}

fn integrate_panels<T: QuadValue, F: Fn(f64) -> T>(f: &F, panels: &[(f64, f64)], opts: QuadOptions) -> QuadResult<T> {
    let mut items: Vec<(f64, f64, T, f64)> = panels
        .iter()
        .filter(|(a, b)| b > a)
        .map(|&(a, b)| {
            let (v, e) = gk15(f, a, b);
            (a, b, v, e)
        })
        .collect();
    loop {
        let total = items.iter().fold(T::zero(), |acc, it| acc + it.2);
        let err: f64 = items.iter().map(|it| it.3).sum();
        let target = opts.abs_tol.max(opts.rel_tol * total.magnitude());
        if err <= target || items.len() >= opts.max_intervals {
            return QuadResult {
                value: total,
                error: err,
                converged: err <= target,
            };
        }
        let (worst, _) = items.iter().enumerate().fold(
            (0, -1.0),
            |(bi, be), (i, it)| {
                if it.3 > be {
                    (i, it.3)
                } else {
                    (bi, be)
                }
            },
        );
        let (a, b, _, _) = items[worst];
        let m = 0.5 * (a + b);
        if !(m > a && m < b) {
            // interval exhausted at floating-point resolution
            items[worst].3 = 0.0;
            continue;
        }
        let (v1, e1) = gk15(f, a, m);
        let (v2, e2) = gk15(f, m, b);
        items[worst] = (a, m, v1, e1);
        items.push((m, b, v2, e2));
    }
}

/// Integral of `f` over the whole real line. `breaks` are points where the
/// integrand is singular or sharply peaked; they become panel endpoints. The
/// two tails beyond the outermost break are mapped to `(0, 1]` by
/// `t = b ± (1 - w)/w`.
pub fn integrate_line<T: QuadValue, F: Fn(f64) -> T + Sync>(f: F, breaks: &[f64], opts: QuadOptions) -> QuadResult<T> {
    let mut b: Vec<f64> = breaks.iter().copied().filter(|x| x.is_finite()).collect();
    if b.is_empty() {
        b.push(0.0);
    }
    b.sort_by(|x, y| x.partial_cmp(y).unwrap());
    b.dedup();
    let lo = b[0];
    let hi = *b.last().unwrap();
    let n_fin = b.len() - 1;
    // one parameter s in [0, n_fin + 2): [0,1) left tail, then finite panels, then right tail
    let g = |s: f64| -> T {
        if s < 1.0 {
            let w = 1.0 - s;
            if w <= 0.0 {
                return T::zero();
            }
            let t = lo - (1.0 - w) / w;
            f(t) * (1.0 / (w * w))
        } else if s < 1.0 + n_fin as f64 {
            let k = ((s - 1.0).floor() as usize).min(n_fin - 1);
            let u = s - 1.0 - k as f64;
            let (a, bb) = (b[k], b[k + 1]);
            f(a + u * (bb - a)) * (bb - a)
        } else {
            let w = n_fin as f64 + 2.0 - s;
            if w <= 0.0 {
                return T::zero();
            }
            let t = hi + (1.0 - w) / w;
            f(t) * (1.0 / (w * w))
        }
    };
    let panels: Vec<(f64, f64)> = (0..n_fin + 2).map(|k| (k as f64, k as f64 + 1.0)).collect();
    integrate_panels(&g, &panels, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let r = integrate(|x: f64| x.powi(5) - 2.0 * x, 0.0, 2.0, QuadOptions::default());
        assert!((r.value - (64.0 / 6.0 - 4.0)).abs() < 1e-13);
    }

    #[test]
    fn endpoint_log_singularity() {
        let r = integrate(|x: f64| x.ln(), 0.0, 1.0, QuadOptions::default());
        assert!((r.value + 1.0).abs() < 1e-10);
    }

    #[test]
    fn lorentzian_on_line() {
        let x2 = 0.01;
        let r = integrate_line(
            |t: f64| x2 / ((t - 0.3).powi(2) + x2 * x2),
            &[0.3],
            QuadOptions::default(),
        );
        assert!((r.value - std::f64::consts::PI).abs() < 1e-10, "{}", r.value);
    }
}
