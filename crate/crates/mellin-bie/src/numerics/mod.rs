//! Numerical building blocks shared by the modules: overflow-safe complex
//! trigonometry, cubic splines on uniform grids, adaptive Gauss–Kronrod
//! quadrature and the rational-basis Hilbert transform on the real line.

pub mod hilbert;
pub mod quad;
pub mod spline;
pub mod trig;
