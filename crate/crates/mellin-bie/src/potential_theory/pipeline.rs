use super::cases::{BoundaryData, ExtensionMode, HarmonicCase};
use super::traces::fd_derivative;
use crate::bie_solver::{solve_mellin, ModelSystemInstance, SolveOptions};
use crate::error::{invalid, Error, Result};
use crate::mellin_core::grid::fmt;
use crate::mellin_core::{LogGridFunction, MellinLine};
use crate::numerics::hilbert::RationalExpansion;
use crate::numerics::quad::{integrate_line, QuadOptions};
use crate::numerics::spline::UniformSpline;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::io::Write;

/// Discretization of the reduced problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BvpOptions {
    /// Mellin line of the solve. Corner singularities `t^{−1/2}` of the
    /// mixed problem need `β > 1/2`.
    pub beta: f64,
    pub t_min: f64,
    pub t_max: f64,
    /// Nodes of the log grid on each half-axis.
    pub n: usize,
    pub padding: usize,
    pub hilbert_modes: usize,
    /// Corrections are set to zero beyond this point.
    pub t_cut: f64,
}

impl Default for BvpOptions {
    fn default() -> Self {
        BvpOptions {
            beta: 0.75,
            t_min: 1e-32,
            t_max: 1e40,
            n: 8192,
            padding: 4,
            hilbert_modes: super::HILBERT_MODES,
            t_cut: 1e6,
        }
    }
}

impl BvpOptions {
    pub fn validate(&self) -> Result<()> {
        MellinLine::new(self.beta)?;
        if !(self.t_min > 0.0 && self.t_max > self.t_min && self.t_max.is_finite()) {
            return Err(invalid("BVP grid needs 0 < t_min < t_max < ∞"));
        }
        if self.n < 16 || self.padding < 1 {
            return Err(invalid("BVP grid needs n ≥ 16 and padding ≥ 1"));
        }
        if self.hilbert_modes < 4 || !self.hilbert_modes.is_multiple_of(2) {
            return Err(invalid("hilbert_modes must be even and at least 4"));
        }
        if !(self.t_cut > self.t_min && self.t_cut <= self.t_max) {
            return Err(invalid("t_cut must lie inside the grid"));
        }
        Ok(())
    }
}

/// Model system for `φ = ∂_t φ⁰` on ℝ⁺ and `ψ(s) = ψ⁰(−s)`:
///
/// ```text
/// G(t) = −g⁰′(t) − H[h⁰](t),    H(s) = −h⁰(−s) + H[g⁰′](−s),
/// ```
///
/// the derivative of the Dirichlet trace identity `½u⁺ + V_{−1}(∂ₙu) = 0`
/// on ℝ⁺ and the Neumann identity `½∂ₙu − V_{+1}u⁺ = 0` on ℝ⁻, both doubled.
pub fn assemble_model_system(data: &BoundaryData, opts: &BvpOptions) -> Result<ModelSystemInstance> {
    opts.validate()?;
    let g0 = data.g0().clone();
    let h0 = data.h0().clone();
    let dg = move |t: f64| fd_derivative(&*g0, t);
    let hh = RationalExpansion::new(|t| h0(t), opts.hilbert_modes);
    let hdg = RationalExpansion::new(&dg, opts.hilbert_modes);
    let grid = LogGridFunction::zeros(opts.t_min, opts.t_max, opts.n)?;
    let nodes = grid.nodes();
    let g: Vec<Complex64> = nodes
        .par_iter()
        .map(|&t| Complex64::new(-dg(t) - hh.hilbert(t), 0.0))
        .collect();
    let h: Vec<Complex64> = nodes
        .par_iter()
        .map(|&s| Complex64::new(-data.h0()(-s) + hdg.hilbert(-s), 0.0))
        .collect();
    if g.iter().chain(&h).any(|v| !v.re.is_finite()) {
        return Err(Error::Evaluation(
            "extensions are not differentiable on the grid; smooth them".into(),
        ));
    }
    ModelSystemInstance::new(grid.with_values(g)?, grid.with_values(h)?, MellinLine::new(opts.beta)?)
}

/// Solution of the reduced system mapped back to trace corrections.
#[derive(Debug, Clone, PartialEq)]
pub struct Corrections {
    /// `∂_t φ⁰` on ℝ⁺, zero beyond `t_cut`.
    pub phi: LogGridFunction,
    /// `φ⁰(t) = −∫_t^∞ φ`, on ℝ⁺.
    pub phi0: LogGridFunction,
    /// `ψ⁰(−t)`, zero beyond `t_cut`.
    pub psi0: LogGridFunction,
    /// Relative residual of the Mellin solve.
    pub solve_residual: f64,
    /// `‖(G, H)‖`; when this is at noise level the relative residual is too.
    pub data_norm: f64,
}

pub fn solve_corrections(instance: &ModelSystemInstance, opts: &BvpOptions) -> Result<Corrections> {
    let sol = solve_mellin(
        instance,
        &SolveOptions {
            padding: opts.padding,
            ..Default::default()
        },
    )?;
    let grid = &sol.phi;
    let n = grid.len();
    let cut = |u: &LogGridFunction| -> Vec<Complex64> {
        (0..n)
            .map(|k| {
                if grid.node(k) <= opts.t_cut {
                    Complex64::new(u.values()[k].re, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect()
    };
    let phi = grid.with_values(cut(&sol.phi))?;
    let psi0 = grid.with_values(cut(&sol.psi))?;
    // ∫_t^∞ φ dτ = ∫_{ln t} φ(e^x) e^x dx
    let f: Vec<f64> = (0..n).map(|k| phi.values()[k].re * grid.node(k)).collect();
    let tail = UniformSpline::new(grid.x_min(), grid.log_step(), f).tail_integrals();
    let phi0 = grid.with_values(tail.iter().map(|v| Complex64::new(-v, 0.0)).collect())?;
    Ok(Corrections {
        phi,
        phi0,
        psi0,
        solve_residual: sol.residual_norm,
        data_norm: (instance.g.l2_norm().powi(2) + instance.h.l2_norm().powi(2)).sqrt(),
    })
}

/// `u(x) = W(g⁰ + φ⁰)(x) − V(h⁰ + ψ⁰)(x)` by the trapezoid rule in `ln|τ|`
/// on each half-axis. Also returns whether the Neumann density fails the
/// zero-mean check.
pub fn reconstruct(data: &BoundaryData, corr: &Corrections, probes: &[[f64; 2]]) -> Result<(Vec<f64>, bool)> {
    if let Some(x) = probes
        .iter()
        .find(|x| !(x[1] > 0.0 && x[0].is_finite() && x[1].is_finite()))
    {
        return Err(Error::Domain(format!("probe ({}, {}) is not interior", x[0], x[1])));
    }
    let grid = &corr.phi0;
    let n = grid.len();
    let h = grid.log_step();
    let s = grid.nodes();
    let (g0, h0) = (data.g0(), data.h0());
    let v_pos: Vec<f64> = (0..n).map(|k| g0(s[k]) + corr.phi0.values()[k].re).collect();
    let v_neg: Vec<f64> = s.iter().map(|&t| g0(-t)).collect();
    let w_pos: Vec<f64> = s.iter().map(|&t| h0(t)).collect();
    let w_neg: Vec<f64> = (0..n).map(|k| h0(-s[k]) + corr.psi0.values()[k].re).collect();
    let wt: Vec<f64> = s.iter().map(|t| t * h).collect();

    let mean: f64 = (0..n).map(|k| (w_pos[k] + w_neg[k]) * wt[k]).sum();
    let mass: f64 = (0..n).map(|k| (w_pos[k].abs() + w_neg[k].abs()) * wt[k]).sum();
    let growth = mean.abs() > super::ZERO_MEAN_TOL * mass;

    let u = probes
        .par_iter()
        .map(|&[x1, x2]| {
            let mut acc = 0.0;
            for k in 0..n {
                for (tau, v, w) in [(s[k], v_pos[k], w_pos[k]), (-s[k], v_neg[k], w_neg[k])] {
                    let r2 = (x1 - tau).powi(2) + x2 * x2;
                    acc += wt[k] * (x2 * v / r2 - 0.5 * r2.ln() * w);
                }
            }
            acc / (2.0 * PI)
        })
        .collect();
    Ok((u, growth))
}

/// Residuals of the undifferentiated trace identities, relative to the
/// largest data value at the test points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CalderonResiduals {
    /// `½(g⁰ + φ⁰) + V_{−1}(h⁰ + ψ⁰)` on ℝ⁺.
    pub dirichlet_identity: f64,
    /// `½(h⁰ + ψ⁰) − V_{+1}(g⁰ + φ⁰)` on ℝ⁻.
    pub neumann_identity: f64,
}

/// Evaluates both identities at `points` (positive numbers `t`; the
/// Neumann identity is taken at `−t`).
pub fn calderon_residuals(
    data: &BoundaryData,
    corr: &Corrections,
    points: &[f64],
    opts: &BvpOptions,
) -> Result<CalderonResiduals> {
    if points.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
        return Err(invalid("identity test points must be positive"));
    }
    let grid = &corr.phi0;
    let n = grid.len();
    let h = grid.log_step();
    let s = grid.nodes();
    let (g0, h0) = (data.g0().clone(), data.h0().clone());
    let hdg = RationalExpansion::new(|t| fd_derivative(&*g0, t), opts.hilbert_modes);
    let phi0 = corr.phi0.interpolant();
    let psi0 = corr.psi0.interpolant();
    let qopts = QuadOptions {
        abs_tol: 1e-15,
        rel_tol: 1e-12,
        max_intervals: 6000,
    };
    let rows: Vec<(f64, f64, f64)> = points
        .par_iter()
        .map(|&t| {
            let vh0 = integrate_line(
                |y: f64| if y == t { 0.0 } else { (t - y).abs().ln() * h0(y) },
                &[t - 1.0, t, t + 1.0],
                qopts,
            )
            .value
                / (2.0 * PI);
            let vpsi: f64 = (0..n)
                .map(|k| (t + s[k]).ln() * corr.psi0.values()[k].re * s[k] * h)
                .sum::<f64>()
                / (2.0 * PI);
            let ra = 0.5 * (g0(t) + phi0.eval(t).re) + vh0 + vpsi;
            let kphi: f64 = (0..n)
                .map(|k| corr.phi.values()[k].re * s[k] * h / (t + s[k]))
                .sum::<f64>()
                / PI;
            let rb = 0.5 * (h0(-t) + psi0.eval(t).re) - 0.5 * hdg.hilbert(-t) + 0.5 * kphi;
            let scale = g0(t).abs().max(g0(-t).abs()).max(h0(t).abs()).max(h0(-t).abs());
            (ra.abs(), rb.abs(), scale)
        })
        .collect();
    let scale = rows.iter().map(|r| r.2).fold(0.0, f64::max);
    let scale = if scale > 0.0 { scale } else { 1.0 };
    Ok(CalderonResiduals {
        dirichlet_identity: rows.iter().map(|r| r.0).fold(0.0, f64::max) / scale,
        neumann_identity: rows.iter().map(|r| r.1).fold(0.0, f64::max) / scale,
    })
}

/// The 5 × 5 probe set `x₁ ∈ {−2, …, 2}`, `x₂ ∈ {0.5, …, 2.5}`.
pub fn default_probes() -> Vec<[f64; 2]> {
    let mut p = Vec::with_capacity(25);
    for j in 0..5 {
        for i in 0..5 {
            p.push([-2.0 + i as f64, 0.5 + 0.5 * j as f64]);
        }
    }
    p
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbeRecord {
    pub x1: f64,
    pub x2: f64,
    pub u_reconstructed: f64,
    pub u_exact: f64,
    pub abs_err: f64,
}

/// CSV with header `x1,x2,u_reconstructed,u_exact,abs_err`.
pub fn write_probe_csv<W: Write>(records: &[ProbeRecord], w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(["x1", "x2", "u_reconstructed", "u_exact", "abs_err"])?;
    for r in records {
        wr.write_record(&[
            fmt(r.x1),
            fmt(r.x2),
            fmt(r.u_reconstructed),
            fmt(r.u_exact),
            fmt(r.abs_err),
        ])?;
    }
    wr.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BvpGrid {
    pub t_min: f64,
    pub t_max: f64,
    pub n: usize,
    pub beta: f64,
    pub t_cut: f64,
}

/// Description of a manufactured run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseSpec {
    pub case_name: String,
    pub formula_id: String,
    pub grid: BvpGrid,
    pub extension_mode: ExtensionMode,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BvpSummary {
    pub schema_version: u32,
    pub spec: CaseSpec,
    pub probes: usize,
    pub max_abs_error: f64,
    /// `max |u_rec − u| / max |u|` over the probes.
    pub max_relative_error: f64,
    pub solve_residual: f64,
    pub data_norm: f64,
    pub calderon: CalderonResiduals,
    pub zero_mean_warning: bool,
}

#[derive(Debug, Clone)]
pub struct BvpOutcome {
    pub summary: BvpSummary,
    pub records: Vec<ProbeRecord>,
    pub corrections: Corrections,
}

/// Extension, reduction, solve and reconstruction for one closed-form case.
pub fn run_manufactured(
    case: HarmonicCase,
    mode: ExtensionMode,
    probes: &[[f64; 2]],
    opts: &BvpOptions,
) -> Result<BvpOutcome> {
    let data = case.boundary_data(mode);
    let instance = assemble_model_system(&data, opts)?;
    let corrections = solve_corrections(&instance, opts)?;
    let (u, zero_mean_warning) = reconstruct(&data, &corrections, probes)?;
    let records: Vec<ProbeRecord> = probes
        .iter()
        .zip(&u)
        .map(|(&[x1, x2], &ur)| {
            let ue = case.u(x1, x2);
            ProbeRecord {
                x1,
                x2,
                u_reconstructed: ur,
                u_exact: ue,
                abs_err: (ur - ue).abs(),
            }
        })
        .collect();
    let max_abs_error = records.iter().map(|r| r.abs_err).fold(0.0, f64::max);
    let scale = records.iter().map(|r| r.u_exact.abs()).fold(0.0, f64::max);
    let points: Vec<f64> = (0..=20).map(|k| 10f64.powf(-1.5 + 3.0 * k as f64 / 20.0)).collect();
    let calderon = calderon_residuals(&data, &corrections, &points, opts)?;
    Ok(BvpOutcome {
        summary: BvpSummary {
            schema_version: crate::SCHEMA_VERSION,
            spec: CaseSpec {
                case_name: case.name().into(),
                formula_id: case.formula_id().into(),
                grid: BvpGrid {
                    t_min: opts.t_min,
                    t_max: opts.t_max,
                    n: opts.n,
                    beta: opts.beta,
                    t_cut: opts.t_cut,
                },
                extension_mode: mode,
            },
            probes: records.len(),
            max_abs_error,
            max_relative_error: if scale > 0.0 {
                max_abs_error / scale
            } else {
                max_abs_error
            },
            solve_residual: corrections.solve_residual,
            data_norm: corrections.data_norm,
            calderon,
            zero_mean_warning,
        },
        records,
        corrections,
    })
}
