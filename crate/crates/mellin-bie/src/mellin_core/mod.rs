//! Mellin transform machinery on geometric grids, meromorphic kernels and
//! their symbols, and direct quadrature of Mellin convolution operators
//!
//! ```text
//! A u(t) = c0 u(t) + (c1/πi) PV∫ u(τ)dτ/(τ − t) + ∫ K(t/τ) u(τ) dτ/τ
//! ```
//!
//! The transform is `M_β v(ξ) = ∫ τ^{β−iξ} v(τ) dτ/τ`. In `x = ln τ` it is a
//! Fourier transform of `e^{βx} v(e^x)`, which is how every routine here
//! evaluates it.

mod convolution;
pub(crate) mod grid;
mod kernel;
mod spectral;
mod transform;

pub use convolution::{apply_mellin_convolution, MellinOperator};
pub use grid::{Flagged, Interpolant, LogGridFunction, MellinLine, XiGrid, DECAY_THRESHOLD};
pub use kernel::{
    check_admissible, mellin_symbol, ComplexJson, KernelDocument, KernelTerm, KernelTermJson, MeromorphicKernel,
};
pub use spectral::SpectralMultiplier;
pub use transform::{mellin_forward, mellin_inverse};
