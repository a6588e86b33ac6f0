use super::RealFn;
use crate::error::{invalid, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// `A exp(−1/(1 − y²))` with `y = (t − centre)/width`, zero for `|y| ≥ 1`.
pub fn bump(t: f64, centre: f64, width: f64, amplitude: f64) -> f64 {
    let y = (t - centre) / width;
    if y.abs() < 1.0 {
        amplitude * (-1.0 / (1.0 - y * y)).exp()
    } else {
        0.0
    }
}

/// `(centre, width, amplitude)` of the bump added to `g⁰` on ℝ⁺.
pub const DIRICHLET_BUMP: (f64, f64, f64) = (2.0, 1.5, 0.3);
/// `(centre, width, amplitude)` of the bump added to `h⁰` on ℝ⁻.
pub const NEUMANN_BUMP: (f64, f64, f64) = (-2.5, 1.5, 0.4);

const RESTRICTION_TOL: f64 = 1e-10;

/// Dirichlet datum `g1` on ℝ⁻, Neumann datum `h1` on ℝ⁺ and their
/// extensions `g0`, `h0` to ℝ.
#[derive(Clone)]
pub struct BoundaryData {
    g1: RealFn,
    h1: RealFn,
    g0: RealFn,
    h0: RealFn,
}

impl fmt::Debug for BoundaryData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundaryData").finish_non_exhaustive()
    }
}

impl BoundaryData {
    /// Checks on log-spaced points of each half-axis that the extensions
    /// restrict to the data.
    pub fn new(g1: RealFn, h1: RealFn, g0: RealFn, h0: RealFn) -> Result<Self> {
        for k in 0..=400 {
            let t = 10f64.powf(-4.0 + 8.0 * k as f64 / 400.0);
            let (a, b) = (g1(-t), g0(-t));
            if !((a - b).abs() <= RESTRICTION_TOL * (1.0 + a.abs())) {
                return Err(invalid(format!("g0 does not extend g1 at t = {}", -t)));
            }
            let (a, b) = (h1(t), h0(t));
            if !((a - b).abs() <= RESTRICTION_TOL * (1.0 + a.abs())) {
                return Err(invalid(format!("h0 does not extend h1 at t = {t}")));
            }
        }
        Ok(BoundaryData { g1, h1, g0, h0 })
    }

    pub fn zero() -> Self {
        let z: RealFn = Arc::new(|_| 0.0);
        BoundaryData {
            g1: z.clone(),
            h1: z.clone(),
            g0: z.clone(),
            h0: z,
        }
    }

    /// `g1(t)`, meaningful for `t ≤ 0`.
    pub fn dirichlet(&self, t: f64) -> f64 {
        (self.g1)(t)
    }

    /// `h1(t)`, meaningful for `t ≥ 0`.
    pub fn neumann(&self, t: f64) -> f64 {
        (self.h1)(t)
    }

    pub fn g0(&self) -> &RealFn {
        &self.g0
    }

    pub fn h0(&self) -> &RealFn {
        &self.h0
    }
}

/// How the data are extended across the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtensionMode {
    /// The global traces of the exact solution; the corrections vanish.
    TrueTrace,
    /// True traces plus a bump on the complementary half-axis; the
    /// corrections must cancel it.
    BumpPerturbed,
}

impl ExtensionMode {
    pub fn name(&self) -> &'static str {
        match self {
            ExtensionMode::TrueTrace => "true_trace",
            ExtensionMode::BumpPerturbed => "bump_perturbed",
        }
    }

    /// Added to the true Dirichlet trace to form `g⁰`.
    pub fn dirichlet_defect(&self, t: f64) -> f64 {
        match self {
            ExtensionMode::TrueTrace => 0.0,
            ExtensionMode::BumpPerturbed => bump(t, DIRICHLET_BUMP.0, DIRICHLET_BUMP.1, DIRICHLET_BUMP.2),
        }
    }

    /// Added to the true Neumann trace to form `h⁰`.
    pub fn neumann_defect(&self, t: f64) -> f64 {
        match self {
            ExtensionMode::TrueTrace => 0.0,
            ExtensionMode::BumpPerturbed => bump(t, NEUMANN_BUMP.0, NEUMANN_BUMP.1, NEUMANN_BUMP.2),
        }
    }
}

/// Closed-form harmonic functions in `x₂ > 0` decaying like `1/|x|`,
/// built from `1/(z + i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HarmonicCase {
    /// `u = x₁/(x₁² + (x₂+1)²) = Re 1/(z + i)`
    Case1,
    /// `u = (x₂+1)/(x₁² + (x₂+1)²) = −Im 1/(z + i)`
    Case2,
}

impl HarmonicCase {
    pub const ALL: [HarmonicCase; 2] = [HarmonicCase::Case1, HarmonicCase::Case2];

    pub fn name(&self) -> &'static str {
        match self {
            HarmonicCase::Case1 => "case1",
            HarmonicCase::Case2 => "case2",
        }
    }

    pub fn formula_id(&self) -> &'static str {
        match self {
            HarmonicCase::Case1 => "re_inv_z_plus_i",
            HarmonicCase::Case2 => "neg_im_inv_z_plus_i",
        }
    }

    pub fn u(&self, x1: f64, x2: f64) -> f64 {
        let d = x1 * x1 + (x2 + 1.0) * (x2 + 1.0);
        match self {
            HarmonicCase::Case1 => x1 / d,
            HarmonicCase::Case2 => (x2 + 1.0) / d,
        }
    }

    /// `u(t, 0)`.
    pub fn dirichlet_trace(&self, t: f64) -> f64 {
        self.u(t, 0.0)
    }

    /// `−∂₂u(t, 0)`.
    pub fn neumann_trace(&self, t: f64) -> f64 {
        let d = t * t + 1.0;
        match self {
            HarmonicCase::Case1 => 2.0 * t / (d * d),
            HarmonicCase::Case2 => (1.0 - t * t) / (d * d),
        }
    }

    pub fn boundary_data(&self, mode: ExtensionMode) -> BoundaryData {
        let c = *self;
        let g: RealFn = Arc::new(move |t| c.dirichlet_trace(t));
        let h: RealFn = Arc::new(move |t| c.neumann_trace(t));
        BoundaryData {
            g1: g.clone(),
            h1: h.clone(),
            g0: Arc::new(move |t| c.dirichlet_trace(t) + mode.dirichlet_defect(t)),
            h0: Arc::new(move |t| c.neumann_trace(t) + mode.neumann_defect(t)),
        }
    }
}
