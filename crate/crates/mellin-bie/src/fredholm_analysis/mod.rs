//! Ellipticity, winding numbers and Fredholm verdicts for the model system.
//!
//! Verdicts for the system follow the local invertibility of its symbol on
//! `Γ1`; the full-contour winding number is reported alongside.

mod scan;

pub use scan::{bvp_criterion, scan_region, CellReport, RegionMap, RegionSummary, ScanOptions, Verdict};

use crate::error::{invalid, Error, Result};
use crate::symbol_calculus::{sample_det_curve, DetCurve, DetSource, RectanglePath, RectanglePoint};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// Relative tolerance (to the curve's max modulus) below which `|det|`
/// counts as zero.
pub const ELLIPTICITY_TOL: f64 = 1e-8;

/// Largest admissible distance from the accumulated argument to an integer
/// multiple of `2π`, in turns.
pub const WINDING_RESIDUAL_MAX: f64 = 0.25;

/// Samples per edge used by the convenience wrappers.
pub const DEFAULT_SAMPLES_PER_EDGE: usize = 1025;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticityReport {
    pub min_abs_det: f64,
    pub arg_min: RectanglePoint,
    pub max_abs_det: f64,
    pub tolerance: f64,
    pub elliptic: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IndexReport {
    pub winding_number: i64,
    pub operator_index: i64,
}

/// Minimum modulus over the samples; elliptic iff it exceeds `tolerance`
/// times the maximum modulus.
pub fn ellipticity(curve: &DetCurve, tolerance: f64) -> Result<EllipticityReport> {
    if curve.values.is_empty() {
        return Err(invalid("empty determinant curve"));
    }
    let (min_abs_det, arg_min) = curve.min_abs();
    let max_abs_det = curve.max_abs();
    Ok(EllipticityReport {
        min_abs_det,
        arg_min,
        max_abs_det,
        tolerance,
        elliptic: min_abs_det > tolerance * max_abs_det,
    })
}

/// Golden-section search of `|det|` on `[a, b]` in the contour parameter.
fn refine_min(source: &DetSource, a: f64, b: f64) -> Result<(f64, RectanglePoint)> {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let f = |u: f64| -> Result<(f64, RectanglePoint)> {
        let w = RectanglePath::point_at(u)?;
        Ok((source.det_at(w)?.norm(), w))
    };
    let (mut a, mut b) = (a, b);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    for _ in 0..80 {
        if fc.0 < fd.0 {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d)?;
        }
        if b - a < 1e-15 {
            break;
        }
    }
    Ok(if fc.0 < fd.0 { fc } else { fd })
}

/// Ellipticity from a sampled curve, with golden-section refinement around
/// every sampled local minimum of `|det|`, so zeros between samples are found.
pub fn ellipticity_refined(source: &DetSource, path: &RectanglePath, tolerance: f64) -> Result<EllipticityReport> {
    let curve = sample_det_curve(source, path)?;
    let mut rep = ellipticity(&curve, tolerance)?;
    let abs: Vec<f64> = curve.values.iter().map(|v| v.norm()).collect();
    let n = abs.len();
    for k in 1..n.saturating_sub(1) {
        if abs[k] <= abs[k - 1] && abs[k] <= abs[k + 1] {
            let (a, b) = (curve.u[k - 1], curve.u[k + 1]);
            // stay within one edge so the compactified map stays monotone
            if a.floor() != b.floor() && b.fract() != 0.0 {
                continue;
            }
            let (m, w) = refine_min(source, a, b)?;
            if m < rep.min_abs_det {
                rep.min_abs_det = m;
                rep.arg_min = w;
            }
        }
    }
    rep.elliptic = rep.min_abs_det > tolerance * rep.max_abs_det;
    Ok(rep)
}

/// Ellipticity on `Γ1` alone: invertibility of the local representative at 0.
pub fn local_invertibility_at_zero(source: &DetSource) -> Result<EllipticityReport> {
    ellipticity_refined(
        source,
        &RectanglePath::gamma1(4 * DEFAULT_SAMPLES_PER_EDGE + 1)?,
        ELLIPTICITY_TOL,
    )
}

/// Winding number by summed principal argument increments of a closed curve;
/// the operator index is its negative.
pub fn winding_number(curve: &[Complex64]) -> Result<IndexReport> {
    if curve.len() < 3 {
        return Err(invalid("winding number needs at least 3 samples"));
    }
    let max = curve.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let (kmin, min) = curve
        .iter()
        .map(|v| v.norm())
        .enumerate()
        .fold((0, f64::INFINITY), |b, (k, v)| if v < b.1 { (k, v) } else { b });
    if !(min > ELLIPTICITY_TOL * max) {
        return Err(Error::NotElliptic {
            min_abs: min,
            location: format!("sample {kmin}"),
        });
    }
    let first = curve[0];
    let last = curve[curve.len() - 1];
    if (first - last).norm() > 1e-8 * max {
        return Err(invalid("curve is not closed"));
    }
    let mut total = 0.0;
    let mut largest: f64 = 0.0;
    for w in curve.windows(2) {
        let step = (w[1] / w[0]).arg();
        largest = largest.max(step.abs());
        total += step;
    }
    let turns = total / (2.0 * PI);
    let k = turns.round();
    let residual = (turns - k).abs();
    if residual >= WINDING_RESIDUAL_MAX || largest > 0.5 * PI {
        return Err(Error::Resolution(format!(
            "argument residual {residual:.3} turns, largest step {largest:.3} rad; refine the path"
        )));
    }
    let w = k as i64;
    Ok(IndexReport {
        winding_number: w,
        operator_index: -w,
    })
}

/// Winding number of `det` over the full contour, doubling the resolution
/// from `n_per_edge` until two consecutive resolutions agree.
pub fn winding_refined(source: &DetSource, n_per_edge: usize) -> Result<IndexReport> {
    let mut n = n_per_edge.max(8);
    let mut prev: Option<IndexReport> = None;
    for _ in 0..6 {
        let curve = sample_det_curve(source, &RectanglePath::new(n)?)?;
        match winding_number(&curve.values) {
            Ok(r) => {
                if prev == Some(r) {
                    return Ok(r);
                }
                prev = Some(r);
            }
            Err(Error::Resolution(_)) => prev = None,
            Err(e) => return Err(e),
        }
        n = 2 * n - 1;
    }
    Err(Error::Resolution(format!(
        "winding number not stable up to {n} samples per edge"
    )))
}
