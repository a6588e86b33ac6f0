use super::RealFn;
use crate::error::{Error, Result};
use crate::numerics::hilbert::RationalExpansion;
use crate::numerics::quad::{integrate_line, QuadOptions};
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

/// Modes of the rational-basis expansions behind every Hilbert transform.
pub const HILBERT_MODES: usize = 4096;

/// Fourth-order centred difference with step `10⁻³ max(1, |t|)`.
pub fn fd_derivative(f: &dyn Fn(f64) -> f64, t: f64) -> f64 {
    let e = 1e-3 * t.abs().max(1.0);
    (-f(t + 2.0 * e) + 8.0 * f(t + e) - 8.0 * f(t - e) + f(t - 2.0 * e)) / (12.0 * e)
}

/// Boundary operators of the half-plane potentials at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceValues {
    pub t: f64,
    /// `V_{−1} v(t) = (1/2π) ∫ ln|t − τ| v(τ) dτ`
    pub v_minus1: f64,
    /// Direct value of the double layer on ℝ, identically 0.
    pub w0: f64,
    /// Its adjoint, identically 0.
    pub w0_star: f64,
    /// `V_{+1} v(t) = (1/2π) PV∫ v′(τ) dτ / (t − τ)`
    pub v_plus1: f64,
}

/// The four trace operators of a fixed density.
pub struct TraceOperators {
    v: RealFn,
    dv: RationalExpansion,
}

impl TraceOperators {
    /// Expands `v′` (by finite differences) in the rational basis.
    pub fn new(v: RealFn) -> Self {
        let f = v.clone();
        let dv = RationalExpansion::new(move |t| fd_derivative(&*f, t), HILBERT_MODES);
        TraceOperators { v, dv }
    }

    fn point(t: f64) -> Result<f64> {
        if t.is_finite() {
            Ok(t)
        } else {
            Err(Error::Evaluation(format!("trace requested at t = {t}")))
        }
    }

    pub fn single_layer(&self, t: f64) -> Result<f64> {
        let t = Self::point(t)?;
        let v = &self.v;
        let opts = QuadOptions {
            abs_tol: 1e-15,
            rel_tol: 1e-12,
            max_intervals: 6000,
        };
        // the singular point itself can be hit once bisection reaches float resolution
        let r = integrate_line(
            |s: f64| if s == t { 0.0 } else { (t - s).abs().ln() * v(s) },
            &[t - 1.0, t, t + 1.0],
            opts,
        );
        if !r.value.is_finite() {
            return Err(Error::Evaluation(format!("log-kernel quadrature failed at t = {t}")));
        }
        Ok(r.value / (2.0 * PI))
    }

    pub fn double_layer(&self, _t: f64) -> f64 {
        0.0
    }

    pub fn adjoint_double_layer(&self, _t: f64) -> f64 {
        0.0
    }

    /// `½ H[v′](t)` with `H f = (1/π) PV∫ f(y)/(x − y) dy`, which is the
    /// limit of `−∂₂ W v` at the boundary.
    pub fn hypersingular(&self, t: f64) -> Result<f64> {
        Ok(0.5 * self.dv.hilbert(Self::point(t)?))
    }

    pub fn evaluate(&self, t: f64) -> Result<TraceValues> {
        Ok(TraceValues {
            t,
            v_minus1: self.single_layer(t)?,
            w0: self.double_layer(t),
            w0_star: self.adjoint_double_layer(t),
            v_plus1: self.hypersingular(t)?,
        })
    }
}

/// All four trace operators of `v` at `points`.
pub fn trace_operators(v: RealFn, points: &[f64]) -> Result<Vec<TraceValues>> {
    let ops = TraceOperators::new(v);
    points.par_iter().map(|&t| ops.evaluate(t)).collect()
}
