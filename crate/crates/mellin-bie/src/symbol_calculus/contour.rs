use super::symbols::{composite_symbol, system_symbol};
use super::{Closure, Edge, RectanglePoint, SpaceParams, SymbolSpec};
use crate::error::{invalid, Error, Result};
use crate::mellin_core::grid::fmt;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;
use std::io::Write;

/// Clockwise discretization of `ℜ`. Each edge gets `n_per_edge` samples,
/// uniform in a compactified parameter `v ∈ [0, 1]` (`ξ = tan π(v − 1/2)` on
/// `Γ1`, `η = tan(πv/2)`-type maps on `Γ2±`). Both endpoints of every edge are
/// included, so each corner appears twice, once from either side. The global
/// parameter `u = edge index + v` runs over `[0, 4]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RectanglePath {
    u: Vec<f64>,
    points: Vec<RectanglePoint>,
}

fn compactified(edge: Edge, v: f64) -> f64 {
    let inf = f64::INFINITY;
    match edge {
        Edge::Gamma1 => match v {
            0.0 => -inf,
            1.0 => inf,
            _ => (PI * (v - 0.5)).tan(),
        },
        Edge::Gamma2Plus => match v {
            0.0 => inf,
            1.0 => 0.0,
            _ => (0.5 * PI * (1.0 - v)).tan(),
        },
        Edge::Gamma3 => match v {
            0.0 => inf,
            1.0 => -inf,
            _ => (PI * (0.5 - v)).tan(),
        },
        Edge::Gamma2Minus => match v {
            0.0 => 0.0,
            1.0 => inf,
            _ => (0.5 * PI * v).tan(),
        },
    }
}

impl RectanglePath {
    pub fn new(n_per_edge: usize) -> Result<Self> {
        if n_per_edge < 2 {
            return Err(invalid("a rectangle path needs at least 2 samples per edge"));
        }
        let mut u = Vec::with_capacity(4 * n_per_edge);
        let mut points = Vec::with_capacity(4 * n_per_edge);
        for (e, edge) in Edge::CLOCKWISE.iter().enumerate() {
            for k in 0..n_per_edge {
                let v = if k + 1 == n_per_edge {
                    1.0
                } else {
                    k as f64 / (n_per_edge - 1) as f64
                };
                u.push(e as f64 + v);
                points.push(RectanglePoint {
                    edge: *edge,
                    coord: compactified(*edge, v),
                });
            }
        }
        Ok(RectanglePath { u, points })
    }

    /// Only the `Γ1` edge, `ξ` from `−∞` to `+∞`.
    pub fn gamma1(n: usize) -> Result<Self> {
        let full = Self::new(n)?;
        Ok(RectanglePath {
            u: full.u[..n].to_vec(),
            points: full.points[..n].to_vec(),
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[RectanglePoint] {
        &self.points
    }

    pub fn parameters(&self) -> &[f64] {
        &self.u
    }

    /// Point at global parameter `u ∈ [0, 4]`.
    pub fn point_at(u: f64) -> Result<RectanglePoint> {
        if !(0.0..=4.0).contains(&u) {
            return Err(invalid(format!("contour parameter u = {u} outside [0, 4]")));
        }
        let e = (u.floor() as usize).min(3);
        let edge = Edge::CLOCKWISE[e];
        Ok(RectanglePoint {
            edge,
            coord: compactified(edge, u - e as f64),
        })
    }
}

/// What to take the determinant of.
#[derive(Debug, Clone, PartialEq)]
pub enum DetSource {
    Composite(SymbolSpec),
    System { params: SpaceParams, closure: Closure },
}

impl DetSource {
    pub fn det_at(&self, w: RectanglePoint) -> Result<Complex64> {
        match self {
            DetSource::Composite(spec) => composite_symbol(spec, w),
            DetSource::System { params, closure } => Ok(system_symbol(params, w, *closure)?.det()),
        }
    }
}

/// Determinant sampled along a [`RectanglePath`].
#[derive(Debug, Clone, PartialEq)]
pub struct DetCurve {
    pub u: Vec<f64>,
    pub points: Vec<RectanglePoint>,
    pub values: Vec<Complex64>,
}

impl DetCurve {
    /// Smallest `|det|` and where it occurs.
    pub fn min_abs(&self) -> (f64, RectanglePoint) {
        let mut best = (f64::INFINITY, self.points[0]);
        for (v, w) in self.values.iter().zip(&self.points) {
            if v.norm() < best.0 {
                best = (v.norm(), *w);
            }
        }
        best
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// CSV with header `u,edge,re_det,im_det`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["u", "edge", "re_det", "im_det"])?;
        for ((u, p), v) in self.u.iter().zip(&self.points).zip(&self.values) {
            wr.write_record(&[fmt(*u), p.edge.name().to_string(), fmt(v.re), fmt(v.im)])?;
        }
        wr.flush()?;
        Ok(())
    }
}

/// Samples `det` of the symbol along `path`; a non-finite sample is an error
/// naming the offending point.
pub fn sample_det_curve(source: &DetSource, path: &RectanglePath) -> Result<DetCurve> {
    let values = path
        .points
        .par_iter()
        .map(|w| {
            let v = source.det_at(*w)?;
            if v.re.is_finite() && v.im.is_finite() {
                Ok(v)
            } else {
                Err(Error::SingularSample(w.to_string()))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DetCurve {
        u: path.u.clone(),
        points: path.points.clone(),
        values,
    })
}
