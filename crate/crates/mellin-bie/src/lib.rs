//! Mellin convolution operators on the half-axis, their symbols on the
//! rectangle contour, and a boundary integral solver for the mixed
//! Dirichlet-Neumann problem in the upper half-plane.
//!
//! - [`mellin_core`]: log-grid functions, the Mellin transform on a line
//!   `Re z = β`, meromorphic kernels and their closed-form symbols.
//! - [`symbol_calculus`]: identity, `K¹_c`, composite and 2×2 system symbols
//!   on the contour Γ1 ∪ Γ2− ∪ Γ3 ∪ Γ2+, and determinant curves.
//! - [`fredholm_analysis`]: ellipticity, winding numbers, `(p, r)` region
//!   scans and the Fredholm criterion in terms of `(p, s)`.
//! - [`bie_solver`]: the system `φ + K¹_{−1}ψ = G`, `ψ + K¹_{−1}φ = H`,
//!   solved in the Mellin domain and by Nyström collocation.
//! - [`potential_theory`]: layer potentials, boundary trace operators and
//!   the manufactured-solution pipeline for the mixed problem.
//! - [`cli_harness`]: the `mellin-bie` command line.
//!
//! Runnable examples for each capability live in `examples/`.

pub mod bie_solver;
pub mod cli_harness;
pub mod error;
pub mod fredholm_analysis;
pub mod mellin_core;
pub mod numerics;
pub mod potential_theory;
pub mod symbol_calculus;

pub use error::{Error, ErrorKind, Result};

/// Version tag written into every JSON config and report.
pub const SCHEMA_VERSION: u32 = 1;
