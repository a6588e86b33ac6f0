//! Hilbert transform on the real line,
//! `H f(x) = (1/π) PV ∫ f(y) / (x − y) dy`,
//! through the expansion `f(x) = Σ a_n ρ_n(x)`,
//! `ρ_n(x) = (1 + ix)^n / (1 − ix)^{n+1}`.
//! Each `ρ_n` with `n ≥ 0` extends analytically to the upper half-plane, so
//! `H ρ_n = −i ρ_n`; for `n < 0` it extends to the lower one and `H ρ_n = i ρ_n`.
//! With `x = tan(θ/2)` the coefficients are the Fourier coefficients of
//! `(1 − ix) f(x)`, so functions with `1/|x|` decay are resolved spectrally.

use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

/// Coefficients of a real function in the rational basis.
#[derive(Debug, Clone)]
pub struct RationalExpansion {
    /// `a_n` for `n = 0, 1, …, N/2 − 1`
    pos: Vec<Complex64>,
    /// `a_{−m}` for `m = 1, …, N/2`
    neg: Vec<Complex64>,
}

impl RationalExpansion {
    /// Samples `f` at `N` (even) midpoint nodes `x_j = tan(θ_j/2)`.
    pub fn new<F: Fn(f64) -> f64>(f: F, n: usize) -> Self {
        assert!(n >= 4 && n.is_multiple_of(2));
        let dth = 2.0 * PI / n as f64;
        let mut buf: Vec<Complex64> = (0..n)
            .map(|j| {
                let th = -PI + (j as f64 + 0.5) * dth;
                let x = (0.5 * th).tan();
                Complex64::new(1.0, -x) * f(x)
            })
            .collect();
        FftPlanner::new().plan_fft_forward(n).process(&mut buf);
        let coef = |k: i64| -> Complex64 {
            let idx = k.rem_euclid(n as i64) as usize;
            let phase = k as f64 * (PI - 0.5 * dth);
            buf[idx] * Complex64::from_polar(1.0 / n as f64, phase)
        };
        let half = (n / 2) as i64;
        RationalExpansion {
            pos: (0..half).map(coef).collect(),
            neg: (1..=half).map(|m| coef(-m)).collect(),
        }
    }

    fn sums(&self, x: f64) -> (Complex64, Complex64, Complex64) {
        let den = Complex64::new(1.0, -x);
        let z = Complex64::new(1.0, x) / den;
        let zc = z.conj();
        let mut sp = Complex64::new(0.0, 0.0);
        for a in self.pos.iter().rev() {
            sp = sp * z + a;
        }
        let mut sm = Complex64::new(0.0, 0.0);
        for a in self.neg.iter().rev() {
            sm = (sm + a) * zc;
        }
        (sp, sm, den)
    }

    /// Reconstructed value `f(x)`.
    pub fn value(&self, x: f64) -> f64 {
        if !x.is_finite() {
            return 0.0;
        }
        let (sp, sm, den) = self.sums(x);
        ((sp + sm) / den).re
    }

    /// `H f(x)`.
    pub fn hilbert(&self, x: f64) -> f64 {
        if !x.is_finite() {
            return 0.0;
        }
        let i = Complex64::new(0.0, 1.0);
        let (sp, sm, den) = self.sums(x);
        ((-i * sp + i * sm) / den).re
    }
}
