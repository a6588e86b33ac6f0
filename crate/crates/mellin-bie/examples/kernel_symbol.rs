//! Closed-form symbols of Mellin convolution operators `c0 I + c1 S + K`.

use mellin_bie::mellin_core::{check_admissible, mellin_symbol, KernelTerm, MellinLine, MeromorphicKernel};
use num_complex::Complex64 as C;
use std::f64::consts::PI;

fn main() -> mellin_bie::Result<()> {
    let line = MellinLine::new(0.25)?;

    // K¹_{−1}: symbol 1/sin π(β − iξ)
    let k = MeromorphicKernel::k1(C::new(-1.0, 0.0), C::new(1.0, 0.0));
    let zero = C::new(0.0, 0.0);
    for xi in [0.0, 0.5, 2.0] {
        let a = mellin_symbol(&k, zero, zero, line, xi)?;
        println!("K1_-1   xi = {xi:>4}  symbol = {a:.6}");
    }

    // I + ½ K¹_{−1} + a double pole at −2, and the Cauchy operator S
    let mixed = MeromorphicKernel::new(vec![
        KernelTerm::new(C::new(0.5 / PI, 0.0), C::new(-1.0, 0.0), 1),
        KernelTerm::new(C::new(0.25, 0.0), C::new(-2.0, 0.0), 2),
    ]);
    println!("mixed kernel admissible: {}", check_admissible(&mixed)?);
    for xi in [0.0, 1.0] {
        let a = mellin_symbol(&mixed, C::new(1.0, 0.0), zero, line, xi)?;
        let s = mellin_symbol(&MeromorphicKernel::zero(), zero, C::new(1.0, 0.0), line, xi)?;
        println!("xi = {xi}  I + K: {a:.6}   S: {s:.6}");
    }

    // a pole on the positive axis is admissible only when simple
    let bad = MeromorphicKernel::new(vec![KernelTerm::new(C::new(1.0, 0.0), C::new(2.0, 0.0), 2)]);
    println!("double pole at t = 2 admissible: {}", check_admissible(&bad)?);
    Ok(())
}
