use mellin_bie::bie_solver::*;
use mellin_bie::mellin_core::*;
use mellin_bie::Error;
use num_complex::Complex64 as C;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const T_MIN: f64 = 1e-32;
const T_MAX: f64 = 1e12;
const N: usize = 4096;

fn line(beta: f64) -> MellinLine {
    MellinLine::new(beta).unwrap()
}

fn real(t_min: f64, t_max: f64, n: usize, f: impl Fn(f64) -> f64) -> LogGridFunction {
    LogGridFunction::from_real_fn(t_min, t_max, n, f).unwrap()
}

fn rel(a: &LogGridFunction, b: &LogGridFunction) -> f64 {
    a.zip_map(b, |x, y| x - y).unwrap().l2_norm() / b.l2_norm()
}

fn add(a: &LogGridFunction, b: &LogGridFunction) -> LogGridFunction {
    a.zip_map(b, |x, y| x + y).unwrap()
}

fn manufactured(seed: u64) -> ManufacturedInstance {
    manufactured_instance(&mut ChaCha8Rng::seed_from_u64(seed), line(0.25), T_MIN, T_MAX, N).unwrap()
}

#[test]
fn decouple_examples() {
    let g = real(1e-3, 1e3, 64, |t| t / (1.0 + t * t));
    let inst = ModelSystemInstance::new(g.clone(), g.clone(), line(0.25)).unwrap();
    let d = decouple(&inst).unwrap();
    assert_eq!(d.minus.max_abs(), 0.0);
    let neg = g.map(|v| -v);
    let d = decouple(&ModelSystemInstance::new(g.clone(), neg, line(0.25)).unwrap()).unwrap();
    assert_eq!(d.plus.max_abs(), 0.0);
    let (phi, psi) = recompose(&d.plus, &d.minus).unwrap();
    assert!(rel(&phi, &g) < 1e-15 && rel(&psi, &g.map(|v| -v)) < 1e-15);
}

#[test]
fn symmetric_data_gives_equal_components() {
    let w = real(T_MIN, T_MAX, N, |t| t.powf(0.6) * (-t).exp());
    let g = add(&w, &apply_k(&w).unwrap());
    let inst = ModelSystemInstance::new(g.clone(), g, line(0.25)).unwrap();
    let s = solve_mellin(&inst, &SolveOptions::default()).unwrap();
    assert!(rel(&s.phi, &w) < 1e-5, "phi error {}", rel(&s.phi, &w));
    assert!(rel(&s.psi, &w) < 1e-5);
    assert_eq!(s.phi, s.psi);
    assert!(s.residual_norm < 1e-6);
}

#[test]
fn recomposition_solves_full_system() {
    let m = manufactured(11);
    let s = solve_mellin(&m.instance, &SolveOptions::default()).unwrap();
    assert!(s.residual_norm < 1e-6, "{}", s.residual_norm);
    assert!(residual(&m.instance, &s.phi, &s.psi).unwrap() < 1e-6);
}

#[test]
fn zero_data_gives_zero_solution() {
    let z = LogGridFunction::zeros(1e-20, 1e8, 1024).unwrap();
    let inst = ModelSystemInstance::new(z.clone(), z, line(0.25)).unwrap();
    let a = solve_mellin(&inst, &SolveOptions::default()).unwrap();
    assert_eq!(a.phi.max_abs() + a.psi.max_abs(), 0.0);
    let b = solve_nystrom(&inst, &NystromMesh::default_for(1e8).unwrap(), &SolveOptions::default()).unwrap();
    assert_eq!(b.phi.max_abs() + b.psi.max_abs(), 0.0);
}

#[test]
fn half_line_is_rejected() {
    let z = LogGridFunction::zeros(1e-20, 1e8, 256).unwrap();
    let inst = ModelSystemInstance::new(z.clone(), z, line(0.5)).unwrap();
    assert!(matches!(
        solve_mellin(&inst, &SolveOptions::default()),
        Err(Error::NonEllipticLine { .. })
    ));
    assert!(minus_symbol_min(0.5) < 1e-12);
    assert!((minus_symbol_min(0.25) - (2f64.sqrt() - 1.0)).abs() < 1e-12);
}

#[test]
fn methods_agree_and_match_exact_solution() {
    for seed in [1, 2] {
        let m = manufactured(seed);
        let a = solve_mellin(&m.instance, &SolveOptions::default()).unwrap();
        let b = solve_nystrom(
            &m.instance,
            &NystromMesh::default_for(T_MAX).unwrap(),
            &SolveOptions::default(),
        )
        .unwrap();
        assert!(a.relative_distance(&b).unwrap() < 1e-4);
        assert!(a.residual_norm < 1e-5 && b.residual_norm < 1e-5);
        assert!(rel(&a.phi, &m.phi) < 1e-5 && rel(&b.phi, &m.phi) < 1e-5);
        assert!(rel(&a.psi, &m.psi) < 1e-5 && rel(&b.psi, &m.psi) < 1e-5);
        let cond = b.condition_estimate.unwrap();
        assert!(cond > 1.0 && cond < 1e4, "{cond}");
    }
}

#[test]
fn nystrom_matches_neumann_identity_with_remainder() {
    // H = 0: φ = G + K²G + K⁴G + K⁶φ and ψ = −Kφ; G = w − K²w keeps the
    // solution w in the grid class
    let w = real(T_MIN, T_MAX, N, |t| t.powf(0.8) * (-1.5 * t).exp());
    let kkw = apply_k(&apply_k(&w).unwrap()).unwrap();
    let g = w.zip_map(&kkw, |a, b| a - b).unwrap();
    let inst =
        ModelSystemInstance::new(g.clone(), LogGridFunction::zeros(T_MIN, T_MAX, N).unwrap(), line(0.25)).unwrap();
    let s = solve_nystrom(
        &inst,
        &NystromMesh::default_for(T_MAX).unwrap(),
        &SolveOptions::default(),
    )
    .unwrap();
    let k = |u: &LogGridFunction| apply_k(u).unwrap();
    let k2g = k(&k(&g));
    let k4g = k(&k(&k2g));
    let mut k6phi = s.phi.clone();
    for _ in 0..6 {
        k6phi = k(&k6phi);
    }
    let rhs = add(&add(&add(&g, &k2g), &k4g), &k6phi);
    assert!(rel(&s.phi, &rhs) < 1e-6, "{}", rel(&s.phi, &rhs));
    assert!(rel(&s.psi, &k(&s.phi).map(|v| -v)) < 1e-6);
    // the remainder is not negligible, so the identity is a real check
    assert!(k6phi.l2_norm() > 1e-2 * g.l2_norm());
    assert!(rel(&s.phi, &w) < 1e-5);
}

#[test]
fn residual_examples() {
    let m = manufactured(3);
    assert!(residual(&m.instance, &m.phi, &m.psi).unwrap() < 1e-6);
    let z = m.phi.map(|_| C::new(0.0, 0.0));
    assert!((residual(&m.instance, &z, &z).unwrap() - 1.0).abs() < 1e-12);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut noisy = |u: &LogGridFunction| {
        let f: Vec<f64> = (0..u.len()).map(|_| 1.0 + 0.01 * rng.random_range(-1.0..1.0)).collect();
        u.with_values(u.values().iter().zip(&f).map(|(v, s)| v * s).collect())
            .unwrap()
    };
    let (pn, qn) = (noisy(&m.phi), noisy(&m.psi));
    let r = residual(&m.instance, &pn, &qn).unwrap();
    assert!(r > 1e-4 && r < 0.05, "{r}");
}

#[test]
fn symmetrized_nystrom_kernel_is_symmetric() {
    let k = NystromMesh::default_for(T_MAX).unwrap().symmetrized_kernel();
    let d = (&k - k.transpose()).abs().max();
    assert!(d <= 1e-10 * k.abs().max());
}

#[test]
fn swapping_data_swaps_solution() {
    let m = manufactured(4);
    let opts = SolveOptions::default();
    let a = solve_mellin(&m.instance, &opts).unwrap();
    let b = solve_mellin(&m.instance.swapped(), &opts).unwrap();
    assert_eq!(a.phi, b.psi);
    assert_eq!(a.psi, b.phi);
    let mesh = NystromMesh::default_for(T_MAX).unwrap();
    let c = solve_nystrom(&m.instance, &mesh, &opts).unwrap();
    let d = solve_nystrom(&m.instance.swapped(), &mesh, &opts).unwrap();
    assert!(rel(&c.phi, &d.psi) < 1e-12 && rel(&c.psi, &d.phi) < 1e-12);
}

#[test]
fn dilation_covariance() {
    let m = manufactured(6);
    let lambda = 3.7;
    let dilate = |u: &LogGridFunction| {
        let ip = u.interpolant();
        LogGridFunction::from_fn(T_MIN, T_MAX, N, |t| ip.eval(lambda * t)).unwrap()
    };
    let inst = ModelSystemInstance::new(dilate(&m.instance.g), dilate(&m.instance.h), line(0.25)).unwrap();
    let opts = SolveOptions::default();
    let s = solve_mellin(&m.instance, &opts).unwrap();
    let sd = solve_mellin(&inst, &opts).unwrap();
    let ip = s.phi.interpolant();
    let scale = s.phi.max_abs();
    for k in 0..N {
        let t = sd.phi.node(k);
        if t > 1e-8 && t < 1e3 {
            assert!((sd.phi.values()[k] - ip.eval(lambda * t)).norm() < 1e-6 * scale);
        }
    }
}

#[test]
fn conditioning_threshold_is_enforced() {
    let m = manufactured(8);
    let opts = SolveOptions {
        cond_max: 10.0,
        ..Default::default()
    };
    let r = solve_nystrom(&m.instance, &NystromMesh::default_for(T_MAX).unwrap(), &opts);
    assert!(matches!(r, Err(Error::Conditioning(c)) if c > 10.0));
}

#[test]
fn report_json_fields() {
    let m = manufactured(9);
    let s = solve_mellin(&m.instance, &SolveOptions::default()).unwrap();
    let mut buf = Vec::new();
    s.write_report_json(&mut buf).unwrap();
    let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["method"], "mellin_diagonal");
    assert_eq!(v["beta"], 0.25);
    assert_eq!(v["grid"]["n"], N);
    assert!(v["residual"].as_f64().unwrap() < 1e-5);
    assert!(v["timings"].is_null());
    let timed = solve_mellin(
        &m.instance,
        &SolveOptions {
            record_timings: true,
            ..Default::default()
        },
    )
    .unwrap();
    assert!(timed.report().timings.is_some());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn mellin_swap_is_exact(seed in 0u64..1000, beta in prop::sample::select(vec![0.2, 0.25, 0.35, 0.7])) {
        let m = manufactured_instance(&mut ChaCha8Rng::seed_from_u64(seed), line(beta), 1e-24, 1e8, 1024).unwrap();
        let a = solve_mellin(&m.instance, &SolveOptions::default()).unwrap();
        let b = solve_mellin(&m.instance.swapped(), &SolveOptions::default()).unwrap();
        prop_assert_eq!(&a.phi, &b.psi);
        prop_assert_eq!(&a.psi, &b.phi);
    }
}
