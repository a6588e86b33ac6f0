use crate::error::{Error, Result};
use crate::numerics::quad::{integrate_line, QuadOptions, QuadResult};
use serde::Serialize;
use std::f64::consts::PI;

/// `|∫v| / ∫|v|` above which a logarithmic potential is flagged for growth.
pub const ZERO_MEAN_TOL: f64 = 1e-6;

const OPTS: QuadOptions = QuadOptions {
    abs_tol: 1e-15,
    rel_tol: 1e-12,
    max_intervals: 6000,
};

fn off_boundary(x: [f64; 2]) -> Result<()> {
    if x[1] == 0.0 || !x[0].is_finite() || !x[1].is_finite() {
        return Err(Error::Domain(format!(
            "potential evaluated at ({}, {}) on the boundary; use the trace operators",
            x[0], x[1]
        )));
    }
    Ok(())
}

fn checked(r: QuadResult<f64>, what: &str) -> Result<f64> {
    if !r.value.is_finite() {
        return Err(Error::Evaluation(format!("{what}: non-finite quadrature value")));
    }
    Ok(r.value)
}

/// Panel breaks resolving a peak of width `w` at `c`.
fn breaks(c: f64, w: f64) -> Vec<f64> {
    let mut b = vec![c];
    for s in [1.0, 10.0, 100.0] {
        b.push(c - s * w);
        b.push(c + s * w);
    }
    b
}

/// `W v(x) = (1/2π) ∫ x₂ v(τ) dτ / ((x₁ − τ)² + x₂²)`.
///
/// Defined for `x₂ ≠ 0`; the value for `x₂ < 0` is the lower half-plane
/// potential, so the jump across ℝ can be formed directly.
pub fn double_layer(v: &(dyn Fn(f64) -> f64 + Sync), x: [f64; 2]) -> Result<f64> {
    off_boundary(x)?;
    let [x1, x2] = x;
    let r = integrate_line(
        |t: f64| {
            let d = x1 - t;
            x2 * v(t) / (d * d + x2 * x2)
        },
        &breaks(x1, x2.abs()),
        OPTS,
    );
    Ok(checked(r, "double layer")? / (2.0 * PI))
}

/// Value of a logarithmic potential together with the mean of its density.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogPotential {
    pub value: f64,
    pub mean: f64,
    /// The density is not mean-free, so the potential grows like `ln|x|`.
    pub growth_warning: bool,
}

/// `V v(x) = (1/2π) ∫ ln|x − τ| v(τ) dτ`.
pub fn single_layer(v: &(dyn Fn(f64) -> f64 + Sync), x: [f64; 2]) -> Result<LogPotential> {
    off_boundary(x)?;
    let [x1, x2] = x;
    let r = integrate_line(
        |t: f64| 0.5 * ((x1 - t).powi(2) + x2 * x2).ln() * v(t),
        &breaks(x1, x2.abs()),
        OPTS,
    );
    let value = checked(r, "single layer")? / (2.0 * PI);
    let mean = checked(integrate_line(v, &breaks(x1, 1.0), OPTS), "density mean")?;
    let mass = checked(
        integrate_line(|t: f64| v(t).abs(), &breaks(x1, 1.0), OPTS),
        "density mass",
    )?;
    Ok(LogPotential {
        value,
        mean,
        growth_warning: mean.abs() > ZERO_MEAN_TOL * mass,
    })
}

/// `N f(x) = (1/2π) ∫_{y₂>0} ln|x − y| f(y) dy` by nested adaptive quadrature.
pub fn newton_potential(f: &(dyn Fn(f64, f64) -> f64 + Sync), x: [f64; 2]) -> Result<f64> {
    off_boundary(x)?;
    let [x1, x2] = x;
    let inner_opts = QuadOptions {
        abs_tol: 1e-13,
        rel_tol: 1e-10,
        max_intervals: 2000,
    };
    let inner = |y2: f64| -> f64 {
        if y2 <= 0.0 {
            return 0.0;
        }
        integrate_line(
            |y1: f64| 0.5 * ((x1 - y1).powi(2) + (x2 - y2).powi(2)).ln() * f(y1, y2),
            &breaks(x1, 1.0),
            inner_opts,
        )
        .value
    };
    let outer_opts = QuadOptions {
        abs_tol: 1e-12,
        rel_tol: 1e-9,
        max_intervals: 2000,
    };
    let mut b = breaks(x2, 1.0);
    b.retain(|y| *y > 0.0);
    b.push(0.0);
    let r = integrate_line(inner, &b, outer_opts);
    Ok(checked(r, "Newton potential")? / (2.0 * PI))
}
