use crate::error::{invalid, Error, Result};
use crate::numerics::spline::UniformSpline;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};

/// Relative endpoint magnitude below which a sampled function counts as
/// decayed.
pub const DECAY_THRESHOLD: f64 = 1e-10;

/// A value together with a truncation warning raised by the routine that
/// produced it.
#[derive(Debug, Clone)]
pub struct Flagged<T> {
    pub value: T,
    pub truncation_warning: bool,
}

/// Vertical line `Re z = β` of the Mellin transform, `0 < β < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MellinLine {
    beta: f64,
}

impl MellinLine {
    pub fn new(beta: f64) -> Result<Self> {
        if beta > 0.0 && beta < 1.0 {
            Ok(MellinLine { beta })
        } else {
            Err(Error::Domain(format!("Mellin line beta = {beta} outside (0, 1)")))
        }
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Complex samples at geometric nodes `t_k = t_min (t_max/t_min)^{k/(n−1)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogGridFunction {
    t_min: f64,
    t_max: f64,
    values: Vec<Complex64>,
}

impl LogGridFunction {
    pub fn new(t_min: f64, t_max: f64, values: Vec<Complex64>) -> Result<Self> {
        if !(t_min > 0.0 && t_max.is_finite() && t_min < t_max) {
            return Err(invalid(format!(
                "log grid needs 0 < t_min < t_max, got [{t_min}, {t_max}]"
            )));
        }
        if values.len() < 2 {
            return Err(invalid("log grid needs at least 2 nodes"));
        }
        Ok(LogGridFunction { t_min, t_max, values })
    }

    pub fn from_fn<F: Fn(f64) -> Complex64>(t_min: f64, t_max: f64, n: usize, f: F) -> Result<Self> {
        let mut g = Self::new(t_min, t_max, vec![Complex64::new(0.0, 0.0); n.max(2)])?;
        if n < 2 {
            return Err(invalid("log grid needs at least 2 nodes"));
        }
        for k in 0..n {
            g.values[k] = f(g.node(k));
        }
        Ok(g)
    }

    pub fn from_real_fn<F: Fn(f64) -> f64>(t_min: f64, t_max: f64, n: usize, f: F) -> Result<Self> {
        Self::from_fn(t_min, t_max, n, |t| Complex64::new(f(t), 0.0))
    }

    pub fn zeros(t_min: f64, t_max: f64, n: usize) -> Result<Self> {
        Self::new(t_min, t_max, vec![Complex64::new(0.0, 0.0); n])
    }

    /// Same grid, new values.
    pub fn with_values(&self, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != self.len() {
            return Err(invalid("value count does not match the grid"));
        }
        Self::new(self.t_min, self.t_max, values)
    }

    pub fn t_min(&self) -> f64 {
        self.t_min
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Step in `x = ln t`.
    pub fn log_step(&self) -> f64 {
        (self.t_max / self.t_min).ln() / (self.len() - 1) as f64
    }

    pub fn x_min(&self) -> f64 {
        self.t_min.ln()
    }

    pub fn x(&self, k: usize) -> f64 {
        self.x_min() + k as f64 * self.log_step()
    }

    pub fn node(&self, k: usize) -> f64 {
        if k == 0 {
            self.t_min
        } else if k + 1 == self.len() {
            self.t_max
        } else {
            self.x(k).exp()
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.len()).map(|k| self.node(k)).collect()
    }

    pub fn same_grid(&self, other: &Self) -> bool {
        self.len() == other.len() && rel_close(self.t_min, other.t_min) && rel_close(self.t_max, other.t_max)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Endpoint magnitudes below `threshold` times the maximum.
    pub fn decays(&self, threshold: f64) -> bool {
        let m = self.max_abs();
        if m == 0.0 {
            return true;
        }
        self.values[0].norm() <= threshold * m && self.values[self.len() - 1].norm() <= threshold * m
    }

    /// `sqrt(∫ |u|² dt)` by the trapezoid rule in `ln t`.
    pub fn l2_norm(&self) -> f64 {
        let h = self.log_step();
        let n = self.len();
        let s: f64 = (0..n)
            .map(|k| {
                let w = if k == 0 || k == n - 1 { 0.5 } else { 1.0 };
                w * self.values[k].norm_sqr() * self.node(k)
            })
            .sum();
        (h * s).sqrt()
    }

    /// Pointwise combination of two functions on the same grid.
    pub fn zip_map<F: Fn(Complex64, Complex64) -> Complex64>(&self, other: &Self, f: F) -> Result<Self> {
        if !self.same_grid(other) {
            return Err(invalid("grids differ"));
        }
        let v = self.values.iter().zip(&other.values).map(|(a, b)| f(*a, *b)).collect();
        self.with_values(v)
    }

    pub fn map<F: Fn(Complex64) -> Complex64>(&self, f: F) -> Self {
        LogGridFunction {
            t_min: self.t_min,
            t_max: self.t_max,
            values: self.values.iter().map(|v| f(*v)).collect(),
        }
    }

    /// Cubic spline in `ln t`; evaluation outside `[t_min, t_max]` yields 0.
    pub fn interpolant(&self) -> Interpolant {
        Interpolant {
            spline: UniformSpline::new(self.x_min(), self.log_step(), self.values.clone()),
        }
    }

    /// Resample onto another geometric grid; nodes outside the source range
    /// become 0.
    pub fn resample(&self, t_min: f64, t_max: f64, n: usize) -> Result<Self> {
        let ip = self.interpolant();
        Self::from_fn(t_min, t_max, n, |t| ip.eval(t))
    }

    /// CSV with header `t,re,im`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["t", "re", "im"])?;
        for (k, v) in self.values.iter().enumerate() {
            wr.write_record(&[fmt(self.node(k)), fmt(v.re), fmt(v.im)])?;
        }
        wr.flush()?;
        Ok(())
    }

    /// Reads the `t,re,im` CSV and checks that the nodes are geometric.
    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rd = csv::Reader::from_reader(r);
        let mut ts = Vec::new();
        let mut vs = Vec::new();
        for rec in rd.records() {
            let rec = rec?;
            let get = |i: usize| -> Result<f64> {
                rec.get(i)
                    .ok_or_else(|| invalid("short CSV record"))?
                    .trim()
                    .parse::<f64>()
                    .map_err(|e| invalid(format!("bad number in CSV: {e}")))
            };
            ts.push(get(0)?);
            vs.push(Complex64::new(get(1)?, get(2)?));
        }
        if ts.len() < 2 {
            return Err(invalid("log grid CSV needs at least 2 rows"));
        }
        let g = Self::new(ts[0], ts[ts.len() - 1], vs)?;
        for (k, t) in ts.iter().enumerate() {
            if !(*t > 0.0) || ((t.ln() - g.x(k)).abs() > 1e-9 * (1.0 + g.x(k).abs())) {
                return Err(invalid(format!("CSV node {k} (t = {t}) is not on a geometric grid")));
            }
        }
        Ok(g)
    }
}

fn rel_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
}

pub(crate) fn fmt(v: f64) -> String {
    format!("{v:e}")
}

/// Spline evaluator returned by [`LogGridFunction::interpolant`].
#[derive(Debug, Clone)]
pub struct Interpolant {
    spline: UniformSpline<Complex64>,
}

impl Interpolant {
    pub fn eval(&self, t: f64) -> Complex64 {
        if !(t > 0.0) {
            return Complex64::new(0.0, 0.0);
        }
        let x = t.ln();
        let tol = 1e-12 * (1.0 + x.abs());
        if x < self.spline.x_min() - tol || x > self.spline.x_max() + tol {
            return Complex64::new(0.0, 0.0);
        }
        self.spline.eval(x)
    }

    /// Derivative with respect to `ln t`.
    pub fn eval_log_deriv(&self, t: f64) -> Complex64 {
        if !(t > 0.0) {
            return Complex64::new(0.0, 0.0);
        }
        self.spline.deriv(t.ln())
    }
}

/// Uniform symmetric frequency grid `ξ_k = −ξ_max + k Δξ`, `k = 0..n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiGrid {
    xi_max: f64,
    n: usize,
}

impl XiGrid {
    pub fn new(xi_max: f64, n: usize) -> Result<Self> {
        if !(xi_max > 0.0 && xi_max.is_finite()) || n < 3 {
            return Err(invalid("xi grid needs xi_max > 0 and at least 3 nodes"));
        }
        Ok(XiGrid { xi_max, n })
    }

    /// Grid matched to a log grid: spacing `π / (x range)` so that periodic
    /// images of the inverse lie outside the window, and cutoff at the
    /// Nyquist frequency `π / h`.
    pub fn for_grid(g: &LogGridFunction) -> Self {
        let lx = (g.t_max() / g.t_min()).ln();
        let xi_max = std::f64::consts::PI / g.log_step();
        let dxi = std::f64::consts::PI / lx;
        let half = (xi_max / dxi).ceil() as usize;
        XiGrid {
            xi_max,
            n: 2 * half + 1,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn xi_max(&self) -> f64 {
        self.xi_max
    }

    pub fn step(&self) -> f64 {
        2.0 * self.xi_max / (self.n - 1) as f64
    }

    pub fn xi(&self, k: usize) -> f64 {
        -self.xi_max + k as f64 * self.step()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|k| self.xi(k)).collect()
    }
}
