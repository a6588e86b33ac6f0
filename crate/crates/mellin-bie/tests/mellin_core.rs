use mellin_bie::mellin_core::*;
use num_complex::Complex64 as C;

fn bump() -> LogGridFunction {
    LogGridFunction::from_fn(1e-14, 1e14, 2049, |t| {
        let x = t.ln();
        C::new((-x * x / 8.0).exp(), 0.3 * x * (-x * x / 6.0).exp())
    })
    .unwrap()
}

/// Quadrature against an FFT multiply by the closed-form symbol.
fn quadrature_vs_symbol(kernel: MeromorphicKernel, c0: C, c1: C) -> f64 {
    let u = bump();
    let q = apply_mellin_convolution(&kernel, c0, c1, &u).unwrap().value;
    let line = MellinLine::new(0.5).unwrap();
    let s = SpectralMultiplier::new(4)
        .unwrap()
        .apply(&u, 0.5, 0.5, |xi| mellin_symbol(&kernel, c0, c1, line, xi).unwrap())
        .unwrap();
    (0..u.len())
        .filter(|&k| u.node(k) > 1e-6 && u.node(k) < 1e6)
        .map(|k| (q.values()[k] - s.values()[k]).norm())
        .fold(0.0, f64::max)
}

const Z: C = C::new(0.0, 0.0);

#[test]
fn ordinary_poles_match_symbol() {
    assert!(quadrature_vs_symbol(MeromorphicKernel::k1(C::new(-1.0, 0.0), C::new(1.0, 0.0)), Z, Z) < 1e-11);
    assert!(quadrature_vs_symbol(MeromorphicKernel::k1(C::new(0.0, 2.0), C::new(1.0, 0.5)), Z, Z) < 1e-11);
    let triple = MeromorphicKernel::new(vec![KernelTerm::new(C::new(1.0, 0.0), C::new(-0.5, 0.7), 3)]);
    assert!(quadrature_vs_symbol(triple, Z, Z) < 1e-11);
}

#[test]
fn principal_value_pole_matches_symbol() {
    assert!(quadrature_vs_symbol(MeromorphicKernel::k1(C::new(2.0, 0.0), C::new(1.0, 0.0)), Z, Z) < 1e-9);
}

#[test]
fn cauchy_term_matches_symbol() {
    assert!(quadrature_vs_symbol(MeromorphicKernel::zero(), C::new(0.5, 0.0), C::new(1.0, 0.0),) < 1e-9);
}
