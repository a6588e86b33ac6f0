use super::{Closure, Edge, RectanglePoint, SpaceParams, SymbolMatrix, SymbolSpec};
use crate::error::{Error, Result};
use crate::numerics::trig::{cot, csc_exp};
use num_complex::Complex64;
use std::f64::consts::PI;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `arg c ∈ (0, 2π)`; the positive semi-axis is rejected.
pub(crate) fn pole_arg(c: Complex64) -> Result<f64> {
    if c.norm() == 0.0 {
        return Err(Error::PoleAtZero);
    }
    if !(c.re.is_finite() && c.im.is_finite()) {
        return Err(crate::error::invalid("pole is not finite"));
    }
    let mut a = c.im.atan2(c.re);
    if a < 0.0 {
        a += 2.0 * PI;
    }
    if a == 0.0 {
        return Err(Error::UnsupportedBranch(format!(
            "pole {c} on the positive real axis has no symbol of this form"
        )));
    }
    Ok(a)
}

/// `Ξ = 1/p − iξ`.
fn big_xi(params: &SpaceParams, xi: f64) -> Complex64 {
    Complex64::new(params.beta(), -xi)
}

/// Continuous branch of `((x − γ)/(x + γ))^s` over `x ∈ [−∞, ∞]`, taking the
/// value 1 at `−∞`, `e^{iπs}` at 0 (for `γ = i`) and `e^{2πis}` at `+∞`.
fn g_branch(s: f64, gamma: Complex64, x: f64) -> Complex64 {
    if x == f64::INFINITY {
        return Complex64::from_polar(1.0, 2.0 * PI * s);
    }
    if x == f64::NEG_INFINITY {
        return Complex64::new(1.0, 0.0);
    }
    let a = Complex64::new(x, 0.0) - gamma;
    let b = Complex64::new(x, 0.0) + gamma;
    let theta = 2.0 * PI + a.arg() - b.arg();
    Complex64::from_polar((a.norm() / b.norm()).powf(s), s * theta)
}

fn identity_with_gamma(params: &SpaceParams, gamma: Complex64, w: RectanglePoint) -> Complex64 {
    let s = params.order;
    let e = Complex64::from_polar(1.0, PI * s);
    match w.edge {
        Edge::Gamma1 => {
            if w.coord == f64::NEG_INFINITY {
                return Complex64::new(1.0, 0.0);
            }
            if w.coord == f64::INFINITY {
                return Complex64::from_polar(1.0, 2.0 * PI * s);
            }
            // sin π(Ξ + s)/sin πΞ = cos πs + sin πs · cot πΞ
            let z = PI * big_xi(params, w.coord);
            e * ((PI * s).cos() + (PI * s).sin() * cot(z))
        }
        Edge::Gamma2Plus => g_branch(s, gamma, w.coord),
        Edge::Gamma2Minus => g_branch(s, gamma, -w.coord),
        Edge::Gamma3 => e,
    }
}

/// Symbol of the identity on the space of order `s = params.order`, with
/// branch parameter `γ = i`.
pub fn identity_symbol(params: &SpaceParams, w: RectanglePoint) -> Result<Complex64> {
    params.validate()?;
    Ok(identity_with_gamma(params, I, w))
}

/// Closed form `e^{−iπ(Ξ−1)} c^{Ξ−s−1} / sin πΞ`, with `arg c ∈ (0, 2π)`.
fn k1_closed_form(theta: f64, c: Complex64, params: &SpaceParams, xi: f64) -> Complex64 {
    if xi.is_infinite() {
        return Complex64::new(0.0, 0.0);
    }
    let z = big_xi(params, xi);
    let log_c = Complex64::new(c.norm().ln(), theta);
    let expo = -I * PI * (z - 1.0) + (z - params.order - 1.0) * log_c;
    csc_exp(PI * z, expo)
}

/// Symbol of `K¹_c`: the closed form on `Γ1` and `Γ3`, zero on `Γ2±`.
/// For `c = −1` this is `e^{−πsi} / sin πΞ`.
pub fn k1_symbol(c: Complex64, params: &SpaceParams, w: RectanglePoint) -> Result<Complex64> {
    params.validate()?;
    let theta = pole_arg(c)?;
    Ok(match w.edge {
        Edge::Gamma1 | Edge::Gamma3 => k1_closed_form(theta, c, params, w.coord),
        Edge::Gamma2Plus | Edge::Gamma2Minus => Complex64::new(0.0, 0.0),
    })
}

fn k1_closed(c: Complex64, params: &SpaceParams, w: RectanglePoint, closure: Closure) -> Result<Complex64> {
    if w.edge == Edge::Gamma3 && closure == Closure::Localized {
        pole_arg(c)?;
        return Ok(Complex64::new(0.0, 0.0));
    }
    k1_symbol(c, params, w)
}

/// `d0 I(ω) + Σ d_j K¹_{c_j}(ω)`, with the kernel part on `Γ3` taken per
/// `spec.closure`.
pub fn composite_symbol(spec: &SymbolSpec, w: RectanglePoint) -> Result<Complex64> {
    spec.validate()?;
    let mut a = spec.d0 * identity_with_gamma(&spec.params, spec.gamma, w);
    for (d, c) in &spec.terms {
        a += d * k1_closed(*c, &spec.params, w, spec.closure)?;
    }
    Ok(a)
}

/// Symbol of the model system `[[I, K¹_{−1}], [K¹_{−1}, I]]` on the space of
/// order `r = params.order`: diagonal `d` from the identity, off-diagonal `o`
/// from `K¹_{−1}`, so `det = d² − o²`.
pub fn system_symbol(params: &SpaceParams, w: RectanglePoint, closure: Closure) -> Result<SymbolMatrix> {
    let d = identity_symbol(params, w)?;
    let o = k1_closed(Complex64::new(-1.0, 0.0), params, w, closure)?;
    SymbolMatrix::new(2, vec![d, o, o, d])
}
