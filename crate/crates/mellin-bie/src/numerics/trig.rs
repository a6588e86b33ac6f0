//! Complex trigonometry that stays finite for large imaginary parts.

use num_complex::Complex64;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `1/sin z`, computed without forming `sin z`.
pub fn csc(z: Complex64) -> Complex64 {
    csc_exp(z, Complex64::new(0.0, 0.0))
}

/// `exp(e) / sin z`, with the exponentials combined before evaluation so that
/// large but cancelling growth rates do not overflow.
pub fn csc_exp(z: Complex64, e: Complex64) -> Complex64 {
    if z.im < 0.0 {
        2.0 * I * (e - I * z).exp() / (1.0 - (-2.0 * I * z).exp())
    } else {
        -2.0 * I * (e + I * z).exp() / (1.0 - (2.0 * I * z).exp())
    }
}

/// `cot z`.
pub fn cot(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        let q = (-2.0 * I * z).exp();
        I * (1.0 + q) / (1.0 - q)
    } else {
        let q = (2.0 * I * z).exp();
        -I * (1.0 + q) / (1.0 - q)
    }
}
