use super::grid::MellinLine;
use crate::error::{invalid, Error, Result};
use crate::numerics::trig::{cot, csc_exp};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// One summand `d / (t − c)^m` of a meromorphic kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelTerm {
    pub d: Complex64,
    pub c: Complex64,
    pub m: u32,
}

impl KernelTerm {
    pub fn new(d: Complex64, c: Complex64, m: u32) -> Self {
        KernelTerm { d, c, m }
    }

    /// Pole on the positive real semi-axis (`arg c = 0`).
    pub fn pole_on_positive_axis(&self) -> bool {
        self.c.re > 0.0 && self.c.im.abs() <= 1e-14 * self.c.re
    }
}

/// `K(t) = Σ_j d_j / (t − c_j)^{m_j}`, poles `c_j ≠ 0`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MeromorphicKernel {
    pub terms: Vec<KernelTerm>,
}

impl MeromorphicKernel {
    pub fn new(terms: Vec<KernelTerm>) -> Self {
        MeromorphicKernel { terms }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `d / (π (t − c))`: the kernel of `K¹_c v(t) = (1/π)∫ v(τ) dτ/(t − cτ)`.
    pub fn k1(c: Complex64, d: Complex64) -> Self {
        Self::new(vec![KernelTerm::new(d / PI, c, 1)])
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        self.terms.iter().map(|k| k.d / (t - k.c).powu(k.m)).sum()
    }

    fn validate(&self) -> Result<()> {
        for k in &self.terms {
            if k.c.norm() == 0.0 {
                return Err(Error::PoleAtZero);
            }
            if k.m == 0 {
                return Err(invalid("kernel multiplicity must be positive"));
            }
            if !(k.c.re.is_finite() && k.c.im.is_finite() && k.d.re.is_finite() && k.d.im.is_finite()) {
                return Err(invalid("kernel term is not finite"));
            }
        }
        Ok(())
    }
}

/// Admissible iff every pole on the positive real axis is simple.
pub fn check_admissible(kernel: &MeromorphicKernel) -> Result<bool> {
    kernel.validate()?;
    Ok(kernel.terms.iter().all(|k| !k.pole_on_positive_axis() || k.m == 1))
}

/// `∫₀^∞ t^{z−1} d/(t − c)^m dt`, principal value for a simple positive pole.
fn term_transform(k: &KernelTerm, z: Complex64) -> Complex64 {
    let pz = PI * z;
    if k.pole_on_positive_axis() {
        // PV ∫ t^{z−1}/(t − c) dt = −π c^{z−1} cot πz
        let cz = ((z - 1.0) * k.c.re.ln()).exp();
        return -PI * k.d * cz * cot(pz);
    }
    // ∫ t^{z−1}/(t − c)^m dt = π (−1)^{m−1} C(z−1, m−1) (−c)^{z−m} / sin πz
    let m = k.m as usize;
    let mut binom = Complex64::new(1.0, 0.0);
    for j in 1..m {
        binom *= (z - j as f64) / j as f64;
    }
    let sign = if (m - 1).is_multiple_of(2) { 1.0 } else { -1.0 };
    let log_mc = (-k.c).ln();
    PI * sign * k.d * binom * csc_exp(pz, (z - m as f64) * log_mc)
}

/// `a_β(ξ) = c0 + c1 coth π(iβ + ξ) + M_β K(ξ)`, with the kernel transform in
/// closed form (residue calculus).
pub fn mellin_symbol(
    kernel: &MeromorphicKernel,
    c0: Complex64,
    c1: Complex64,
    line: MellinLine,
    xi: f64,
) -> Result<Complex64> {
    if !check_admissible(kernel)? {
        return Err(invalid("kernel is not admissible"));
    }
    if !xi.is_finite() {
        return Err(invalid("xi must be finite"));
    }
    let z = Complex64::new(line.beta(), -xi);
    let mut a = c0;
    if c1 != Complex64::new(0.0, 0.0) {
        // coth(iπz) = −i cot(πz)
        a += c1 * Complex64::new(0.0, -1.0) * cot(PI * z);
    }
    for k in &kernel.terms {
        a += term_transform(k, z);
    }
    Ok(a)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexJson {
    fn from(z: Complex64) -> Self {
        ComplexJson { re: z.re, im: z.im }
    }
}

impl From<ComplexJson> for Complex64 {
    fn from(z: ComplexJson) -> Self {
        Complex64::new(z.re, z.im)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelTermJson {
    pub d_re: f64,
    pub d_im: f64,
    pub c_re: f64,
    pub c_im: f64,
    pub m: u32,
}

/// JSON form `{terms: [{d_re, d_im, c_re, c_im, m}], c0, c1}` of an operator
/// `c0 I + c1 S + K`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelDocument {
    pub terms: Vec<KernelTermJson>,
    pub c0: ComplexJson,
    pub c1: ComplexJson,
}

impl KernelDocument {
    pub fn from_parts(kernel: &MeromorphicKernel, c0: Complex64, c1: Complex64) -> Self {
        KernelDocument {
            terms: kernel
                .terms
                .iter()
                .map(|k| KernelTermJson {
                    d_re: k.d.re,
                    d_im: k.d.im,
                    c_re: k.c.re,
                    c_im: k.c.im,
                    m: k.m,
                })
                .collect(),
            c0: c0.into(),
            c1: c1.into(),
        }
    }

    pub fn into_parts(self) -> Result<(MeromorphicKernel, Complex64, Complex64)> {
        let kernel = MeromorphicKernel::new(
            self.terms
                .iter()
                .map(|t| KernelTerm::new(Complex64::new(t.d_re, t.d_im), Complex64::new(t.c_re, t.c_im), t.m))
                .collect(),
        );
        kernel.validate()?;
        Ok((kernel, self.c0.into(), self.c1.into()))
    }
}
