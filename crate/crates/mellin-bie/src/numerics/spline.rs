//! Natural cubic splines on uniform grids, for real or complex samples.

use num_complex::Complex64;
use std::ops::{Add, Mul, Sub};

/// Values a spline can carry.
pub trait SplineValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
}

impl SplineValue for f64 {
    fn zero() -> Self {
        0.0
    }
}

impl SplineValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
}

/// Natural cubic spline through `(x0 + k h, y_k)`.
#[derive(Debug, Clone)]
pub struct UniformSpline<T> {
    x0: f64,
    h: f64,
    y: Vec<T>,
    m: Vec<T>,
}

impl<T: SplineValue> UniformSpline<T> {
    /// Needs at least two samples and `h > 0`.
    pub fn new(x0: f64, h: f64, y: Vec<T>) -> Self {
        assert!(y.len() >= 2 && h > 0.0);
        let n = y.len();
        let mut m = vec![T::zero(); n];
        if n > 2 {
            // Thomas algorithm for m_{k-1} + 4 m_k + m_{k+1} = 6 (y_{k-1} - 2 y_k + y_{k+1}) / h^2
            let k = n - 2;
            let mut c = vec![0.0; k];
            let mut d = vec![T::zero(); k];
            for i in 0..k {
                let rhs = (y[i] - y[i + 1] * 2.0 + y[i + 2]) * (6.0 / (h * h));
                if i == 0 {
                    c[i] = 1.0 / 4.0;
                    d[i] = rhs * (1.0 / 4.0);
                } else {
                    let den = 4.0 - c[i - 1];
                    c[i] = 1.0 / den;
                    d[i] = (rhs - d[i - 1]) * (1.0 / den);
                }
            }
            m[k] = d[k - 1];
            for i in (0..k - 1).rev() {
                m[i + 1] = d[i] - m[i + 2] * c[i];
            }
        }
        UniformSpline { x0, h, y, m }
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn x_min(&self) -> f64 {
        self.x0
    }

    pub fn x_max(&self) -> f64 {
        self.x0 + self.h * (self.y.len() - 1) as f64
    }

    fn locate(&self, x: f64) -> (usize, f64) {
        let n = self.y.len();
        let s = (x - self.x0) / self.h;
        let k = if s <= 0.0 { 0 } else { (s.floor() as usize).min(n - 2) };
        (k, s - k as f64)
    }

    /// Value at `x`; outside the grid the end pieces are extended.
    pub fn eval(&self, x: f64) -> T {
        let (k, u) = self.locate(x);
        let h2 = self.h * self.h / 6.0;
        let a = 1.0 - u;
        self.y[k] * a + self.y[k + 1] * u + (self.m[k] * (a * a * a - a) + self.m[k + 1] * (u * u * u - u)) * h2
    }

    /// First derivative at `x`.
    pub fn deriv(&self, x: f64) -> T {
        let (k, u) = self.locate(x);
        let a = 1.0 - u;
        (self.y[k + 1] - self.y[k]) * (1.0 / self.h)
            + (self.m[k + 1] * (3.0 * u * u - 1.0) - self.m[k] * (3.0 * a * a - 1.0)) * (self.h / 6.0)
    }

    /// Exact integrals of the spline over each cell, cumulated from the right:
    /// entry `k` is the integral over `[x_k, x_{n-1}]`.
    pub fn tail_integrals(&self) -> Vec<T> {
        let n = self.y.len();
        let mut out = vec![T::zero(); n];
        let h = self.h;
        for k in (0..n - 1).rev() {
            let cell = (self.y[k] + self.y[k + 1]) * (h / 2.0) - (self.m[k] + self.m[k + 1]) * (h * h * h / 24.0);
            out[k] = out[k + 1] + cell;
        }
        out
    }
}
