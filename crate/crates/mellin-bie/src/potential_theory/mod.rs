//! Layer potentials of the Laplacian on the upper half-plane, their boundary
//! traces, and the reduction of the mixed problem
//!
//! ```text
//! Δu = 0 in x₂ > 0,    u⁺ = g on ℝ⁻,    −(∂₂u)⁺ = h on ℝ⁺
//! ```
//!
//! to the model system of [`crate::bie_solver`]. With extensions `g⁰, h⁰` of
//! the data to all of ℝ the unknowns are a correction `φ⁰` of the Dirichlet
//! trace on ℝ⁺ and a correction `ψ⁰` of the Neumann trace on ℝ⁻, and
//!
//! ```text
//! u = W(g⁰ + φ⁰) − V(h⁰ + ψ⁰),
//! W v(x) = (1/2π) ∫ x₂ v(τ) dτ / ((x₁ − τ)² + x₂²),
//! V v(x) = (1/2π) ∫ ln|x − τ| v(τ) dτ.
//! ```

mod cases;
mod pipeline;
mod potentials;
mod traces;

pub use cases::{bump, BoundaryData, ExtensionMode, HarmonicCase, DIRICHLET_BUMP, NEUMANN_BUMP};
pub use pipeline::{
    assemble_model_system, calderon_residuals, default_probes, reconstruct, run_manufactured, solve_corrections,
    write_probe_csv, BvpGrid, BvpOptions, BvpOutcome, BvpSummary, CalderonResiduals, CaseSpec, Corrections,
    ProbeRecord,
};
pub use potentials::{double_layer, newton_potential, single_layer, LogPotential, ZERO_MEAN_TOL};
pub use traces::{fd_derivative, trace_operators, TraceOperators, TraceValues, HILBERT_MODES};

use std::sync::Arc;

/// Boundary functions are closures on ℝ, shared across threads.
pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
