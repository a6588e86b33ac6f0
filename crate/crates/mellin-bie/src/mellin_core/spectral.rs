use super::grid::LogGridFunction;
use crate::error::{invalid, Result};
use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

/// Applies Mellin multipliers `û(ξ) ↦ a(ξ) û(ξ)` with zero-padded FFTs on a
/// geometric grid. Input is read on the line `β_in`, output is written on
/// `β_out`, which allows multipliers that shift the line (for instance the
/// antiderivative `−1/(z − 1)`).
#[derive(Debug, Clone, Copy)]
pub struct SpectralMultiplier {
    pub padding: usize,
}

impl Default for SpectralMultiplier {
    fn default() -> Self {
        SpectralMultiplier { padding: 4 }
    }
}

impl SpectralMultiplier {
    pub fn new(padding: usize) -> Result<Self> {
        if padding < 1 {
            return Err(invalid("FFT padding factor must be at least 1"));
        }
        Ok(SpectralMultiplier { padding })
    }

    /// Frequencies of the padded FFT bins.
    pub fn frequencies(&self, u: &LogGridFunction) -> Vec<f64> {
        let m = self.padding * u.len();
        let h = u.log_step();
        (0..m)
            .map(|k| {
                let kk = if k < m.div_ceil(2) {
                    k as f64
                } else {
                    k as f64 - m as f64
                };
                2.0 * PI * kk / (m as f64 * h)
            })
            .collect()
    }

    /// Multiplies the transform on `β_in` by `symbol(ξ)` and inverts on `β_out`.
    pub fn apply<F: Fn(f64) -> Complex64>(
        &self,
        u: &LogGridFunction,
        beta_in: f64,
        beta_out: f64,
        symbol: F,
    ) -> Result<LogGridFunction> {
        let n = u.len();
        let m = self.padding * n;
        let mut buf = vec![Complex64::new(0.0, 0.0); m];
        for k in 0..n {
            buf[k] = u.values()[k] * (beta_in * u.x(k)).exp();
        }
        let mut planner = FftPlanner::new();
        planner.plan_fft_forward(m).process(&mut buf);
        for (b, xi) in buf.iter_mut().zip(self.frequencies(u)) {
            *b *= symbol(xi);
        }
        planner.plan_fft_inverse(m).process(&mut buf);
        let scale = 1.0 / m as f64;
        let vals = (0..n).map(|k| buf[k] * (scale * (-beta_out * u.x(k)).exp())).collect();
        u.with_values(vals)
    }
}
