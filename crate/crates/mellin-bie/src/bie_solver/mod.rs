//! The model system on the half-axis
//!
//! ```text
//! φ + K¹_{−1} ψ = G,    ψ + K¹_{−1} φ = H,    K¹_{−1} v(t) = (1/π) ∫₀^∞ v(τ) dτ/(t + τ),
//! ```
//!
//! solved two ways: diagonally in the Mellin domain after the change of
//! unknowns `u± = φ ± ψ`, and by Nyström collocation on a geometric mesh.

mod instances;
mod mellin;
mod nystrom;

pub use instances::{manufactured_instance, ManufacturedInstance};
pub use mellin::{minus_symbol_min, solve_mellin};
pub use nystrom::{solve_nystrom, NystromMesh};

use crate::error::{invalid, Result};
use crate::mellin_core::{apply_mellin_convolution, LogGridFunction, MellinLine, MeromorphicKernel, DECAY_THRESHOLD};
use num_complex::Complex64;
use serde::Serialize;
use std::io::Write;

/// `K¹_{−1}` as a Mellin convolution kernel, `1/(π(t + 1))`.
pub fn k1_minus_one() -> MeromorphicKernel {
    MeromorphicKernel::k1(Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0))
}

/// Applies `K¹_{−1}` by quadrature on the grid of `u`.
pub fn apply_k(u: &LogGridFunction) -> Result<LogGridFunction> {
    let z = Complex64::new(0.0, 0.0);
    Ok(apply_mellin_convolution(&k1_minus_one(), z, z, u)?.value)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelSystemInstance {
    pub g: LogGridFunction,
    pub h: LogGridFunction,
    pub line: MellinLine,
}

impl ModelSystemInstance {
    pub fn new(g: LogGridFunction, h: LogGridFunction, line: MellinLine) -> Result<Self> {
        if !g.same_grid(&h) {
            return Err(invalid("G and H must share one grid"));
        }
        Ok(ModelSystemInstance { g, h, line })
    }

    /// `t^β G` or `t^β H` has not decayed at a grid end.
    pub fn truncation_warning(&self) -> bool {
        let beta = self.line.beta();
        let weighted = |u: &LogGridFunction| {
            let v: Vec<Complex64> = (0..u.len()).map(|k| u.values()[k] * u.node(k).powf(beta)).collect();
            u.with_values(v).map(|w| !w.decays(DECAY_THRESHOLD)).unwrap_or(true)
        };
        weighted(&self.g) || weighted(&self.h)
    }

    pub fn swapped(&self) -> Self {
        ModelSystemInstance {
            g: self.h.clone(),
            h: self.g.clone(),
            line: self.line,
        }
    }
}

/// Right-hand sides of `(I + K) u₊ = G + H` and `(I − K) u₋ = G − H`.
#[derive(Debug, Clone, PartialEq)]
pub struct Decoupled {
    pub plus: LogGridFunction,
    pub minus: LogGridFunction,
}

pub fn decouple(instance: &ModelSystemInstance) -> Result<Decoupled> {
    Ok(Decoupled {
        plus: instance.g.zip_map(&instance.h, |a, b| a + b)?,
        minus: instance.g.zip_map(&instance.h, |a, b| a - b)?,
    })
}

/// `φ = (u₊ + u₋)/2`, `ψ = (u₊ − u₋)/2`.
pub fn recompose(u_plus: &LogGridFunction, u_minus: &LogGridFunction) -> Result<(LogGridFunction, LogGridFunction)> {
    Ok((
        u_plus.zip_map(u_minus, |a, b| (a + b) * 0.5)?,
        u_plus.zip_map(u_minus, |a, b| (a - b) * 0.5)?,
    ))
}

/// Relative residual `‖(φ + Kψ − G, ψ + Kφ − H)‖ / ‖(G, H)‖` in the `dt`
/// grid norm, with `K` applied by quadrature; absolute when the data vanish.
pub fn residual(instance: &ModelSystemInstance, phi: &LogGridFunction, psi: &LogGridFunction) -> Result<f64> {
    if !(phi.same_grid(&instance.g) && psi.same_grid(&instance.g)) {
        return Err(invalid("candidate solution is not on the instance grid"));
    }
    let kpsi = apply_k(psi)?;
    let kphi = apply_k(phi)?;
    let r1 = phi.zip_map(&kpsi, |a, b| a + b)?.zip_map(&instance.g, |a, b| a - b)?;
    let r2 = psi.zip_map(&kphi, |a, b| a + b)?.zip_map(&instance.h, |a, b| a - b)?;
    let num = (r1.l2_norm().powi(2) + r2.l2_norm().powi(2)).sqrt();
    let den = (instance.g.l2_norm().powi(2) + instance.h.l2_norm().powi(2)).sqrt();
    Ok(if den > 0.0 { num / den } else { num })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    MellinDiagonal,
    Nystrom,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Zero-padding factor of the FFT solve.
    pub padding: usize,
    /// Largest accepted 1-norm condition estimate of the Nyström matrix.
    pub cond_max: f64,
    pub record_timings: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            padding: 4,
            cond_max: 1e12,
            record_timings: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Timings {
    pub solve_seconds: f64,
    pub residual_seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SystemSolution {
    pub phi: LogGridFunction,
    pub psi: LogGridFunction,
    pub residual_norm: f64,
    pub method: Method,
    pub beta: f64,
    pub timings: Option<Timings>,
    /// 1-norm condition estimate (Nyström only).
    pub condition_estimate: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridInfo {
    pub t_min: f64,
    pub t_max: f64,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub schema_version: u32,
    pub method: Method,
    pub beta: f64,
    pub residual: f64,
    pub grid: GridInfo,
    pub condition_estimate: Option<f64>,
    pub timings: Option<Timings>,
}

impl SystemSolution {
    pub fn report(&self) -> SolveReport {
        SolveReport {
            schema_version: crate::SCHEMA_VERSION,
            method: self.method,
            beta: self.beta,
            residual: self.residual_norm,
            grid: GridInfo {
                t_min: self.phi.t_min(),
                t_max: self.phi.t_max(),
                n: self.phi.len(),
            },
            condition_estimate: self.condition_estimate,
            timings: self.timings,
        }
    }

    pub fn write_report_json<W: Write>(&self, w: W) -> Result<()> {
        serde_json::to_writer_pretty(w, &self.report())?;
        Ok(())
    }

    /// Relative `dt` grid distance between two solutions on one grid.
    pub fn relative_distance(&self, other: &SystemSolution) -> Result<f64> {
        let dphi = self.phi.zip_map(&other.phi, |a, b| a - b)?.l2_norm();
        let dpsi = self.psi.zip_map(&other.psi, |a, b| a - b)?.l2_norm();
        let scale = (other.phi.l2_norm().powi(2) + other.psi.l2_norm().powi(2)).sqrt();
        let d = (dphi * dphi + dpsi * dpsi).sqrt();
        Ok(if scale > 0.0 { d / scale } else { d })
    }
}

fn elapsed(start: Option<std::time::Instant>) -> f64 {
    start.map(|s| s.elapsed().as_secs_f64()).unwrap_or(0.0)
}

pub(crate) fn finish(
    instance: &ModelSystemInstance,
    phi: LogGridFunction,
    psi: LogGridFunction,
    method: Method,
    opts: &SolveOptions,
    start: Option<std::time::Instant>,
    condition_estimate: Option<f64>,
) -> Result<SystemSolution> {
    let solve_seconds = elapsed(start);
    let rstart = opts.record_timings.then(std::time::Instant::now);
    let residual_norm = residual(instance, &phi, &psi)?;
    let timings = opts.record_timings.then(|| Timings {
        solve_seconds,
        residual_seconds: elapsed(rstart),
    });
    Ok(SystemSolution {
        phi,
        psi,
        residual_norm,
        method,
        beta: instance.line.beta(),
        timings,
        condition_estimate,
    })
}
