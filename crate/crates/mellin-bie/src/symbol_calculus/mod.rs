//! Lifted symbols on the infinite rectangle `ℜ = Γ1 ∪ Γ2+ ∪ Γ3 ∪ Γ2−`.
//!
//! `Γ1` and `Γ3` carry the Mellin frequency `ξ ∈ [−∞, ∞]`, `Γ2±` the
//! parameter `η ∈ [0, ∞]`. The contour is traversed clockwise: `Γ1` with `ξ`
//! increasing, `Γ2+` with `η` decreasing, `Γ3` with `ξ` decreasing, `Γ2−` with
//! `η` increasing.

mod contour;
mod symbols;

pub use contour::{sample_det_curve, DetCurve, DetSource, RectanglePath};
pub use symbols::{composite_symbol, identity_symbol, k1_symbol, system_symbol};

use crate::error::{invalid, Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

/// Lebesgue exponent `p` and smoothness order (`s` or `r`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpaceParams {
    pub p: f64,
    pub order: f64,
}

impl SpaceParams {
    pub fn new(p: f64, order: f64) -> Result<Self> {
        if !(p > 1.0 && p.is_finite()) {
            return Err(Error::Domain(format!("p = {p} outside (1, ∞)")));
        }
        if !order.is_finite() {
            return Err(invalid("order must be finite"));
        }
        Ok(SpaceParams { p, order })
    }

    /// `β = 1/p`.
    pub fn beta(&self) -> f64 {
        1.0 / self.p
    }

    pub(crate) fn validate(&self) -> Result<()> {
        Self::new(self.p, self.order).map(|_| ())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Edge {
    #[serde(rename = "Gamma1")]
    Gamma1,
    #[serde(rename = "Gamma2plus")]
    Gamma2Plus,
    #[serde(rename = "Gamma3")]
    Gamma3,
    #[serde(rename = "Gamma2minus")]
    Gamma2Minus,
}

impl Edge {
    pub fn name(&self) -> &'static str {
        match self {
            Edge::Gamma1 => "Gamma1",
            Edge::Gamma2Plus => "Gamma2plus",
            Edge::Gamma3 => "Gamma3",
            Edge::Gamma2Minus => "Gamma2minus",
        }
    }

    /// Edges in clockwise order starting at `Γ1`.
    pub const CLOCKWISE: [Edge; 4] = [Edge::Gamma1, Edge::Gamma2Plus, Edge::Gamma3, Edge::Gamma2Minus];
}

/// A point of `ℜ`: `ξ` on `Γ1`/`Γ3`, `η ≥ 0` on `Γ2±`; infinite coordinates
/// denote corners.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectanglePoint {
    pub edge: Edge,
    pub coord: f64,
}

impl RectanglePoint {
    pub fn new(edge: Edge, coord: f64) -> Result<Self> {
        if coord.is_nan() {
            return Err(invalid("rectangle coordinate is NaN"));
        }
        if matches!(edge, Edge::Gamma2Plus | Edge::Gamma2Minus) && coord < 0.0 {
            return Err(invalid(format!(
                "eta = {coord} must be non-negative on {}",
                edge.name()
            )));
        }
        Ok(RectanglePoint { edge, coord })
    }

    pub fn gamma1(xi: f64) -> Self {
        RectanglePoint {
            edge: Edge::Gamma1,
            coord: xi,
        }
    }
}

impl fmt::Display for RectanglePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.edge.name(), self.coord)
    }
}

/// How the kernel part of a symbol is continued onto `Γ3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Closure {
    /// Kernel part vanishes on `Γ3`, as on `Γ2±`.
    #[default]
    Localized,
    /// Kernel part on `Γ3` uses the same closed form as on `Γ1`.
    Verbatim,
}

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl SymbolMatrix {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(invalid("symbol matrix needs dim > 0 and dim² entries"));
        }
        Ok(SymbolMatrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn det(&self) -> Complex64 {
        match self.dim {
            1 => self.entries[0],
            2 => self.entries[0] * self.entries[3] - self.entries[1] * self.entries[2],
            n => nalgebra::DMatrix::from_row_slice(n, n, &self.entries).determinant(),
        }
    }
}

/// `A = d0 I + Σ d_j K¹_{c_j}` on the space with parameters `params`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolSpec {
    pub d0: Complex64,
    pub terms: Vec<(Complex64, Complex64)>,
    pub params: SpaceParams,
    pub gamma: Complex64,
    pub closure: Closure,
}

impl SymbolSpec {
    pub fn new(d0: Complex64, terms: Vec<(Complex64, Complex64)>, params: SpaceParams) -> Result<Self> {
        let s = SymbolSpec {
            d0,
            terms,
            params,
            gamma: Complex64::new(0.0, 1.0),
            closure: Closure::default(),
        };
        s.validate()?;
        Ok(s)
    }

    pub fn with_gamma(mut self, gamma: Complex64) -> Result<Self> {
        self.gamma = gamma;
        self.validate()?;
        Ok(self)
    }

    pub fn with_closure(mut self, closure: Closure) -> Self {
        self.closure = closure;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        let ag = self.gamma.arg();
        if !(self.gamma.norm() > 0.0 && ag > 0.0 && ag < PI) {
            return Err(Error::Domain(format!(
                "branch parameter gamma = {} needs 0 < arg < π",
                self.gamma
            )));
        }
        for (d, c) in &self.terms {
            if !(d.re.is_finite() && d.im.is_finite()) {
                return Err(invalid("coefficient is not finite"));
            }
            symbols::pole_arg(*c)?;
            let a = (c * self.gamma).arg().abs();
            if !(a > 0.0 && a < PI) {
                return Err(Error::Domain(format!("pole {c} violates 0 < |arg(c γ)| < π")));
            }
        }
        Ok(())
    }
}
