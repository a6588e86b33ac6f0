use mellin_bie::numerics::quad::{integrate_line, QuadOptions};
use mellin_bie::potential_theory::*;
use mellin_bie::Error;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock};

fn lap4(f: &dyn Fn(f64, f64) -> f64, x1: f64, x2: f64, h: f64) -> f64 {
    let d = |a: f64, b: f64, c: f64, dd: f64, e: f64| (-a + 16.0 * b - 30.0 * c + 16.0 * dd - e) / (12.0 * h * h);
    let c = f(x1, x2);
    d(
        f(x1 - 2.0 * h, x2),
        f(x1 - h, x2),
        c,
        f(x1 + h, x2),
        f(x1 + 2.0 * h, x2),
    ) + d(
        f(x1, x2 - 2.0 * h),
        f(x1, x2 - h),
        c,
        f(x1, x2 + h),
        f(x1, x2 + 2.0 * h),
    )
}

fn richardson(f: impl Fn(f64) -> f64, h: f64) -> f64 {
    (f(h) - 6.0 * f(h / 2.0) + 8.0 * f(h / 4.0)) / 3.0
}

fn densities() -> Vec<(&'static str, Arc<dyn Fn(f64) -> f64 + Send + Sync>)> {
    vec![
        ("gauss", Arc::new(|t: f64| (-t * t).exp())),
        ("lorentz", Arc::new(|t: f64| 1.0 / (1.0 + t * t))),
        ("dipole", Arc::new(|t: f64| t / (1.0 + t * t).powi(2))),
        ("sech", Arc::new(|t: f64| 1.0 / t.cosh())),
        ("wide_gauss", Arc::new(|t: f64| (-0.25 * t * t).exp())),
    ]
}

#[test]
fn harmonic_cases_are_harmonic_with_matching_traces() {
    for case in HarmonicCase::ALL {
        let u = |a: f64, b: f64| case.u(a, b);
        for &(x1, x2) in &[(-1.5, 0.4), (0.0, 1.0), (2.2, 2.5), (0.3, 0.2)] {
            assert!(lap4(&u, x1, x2, 1e-2).abs() < 1e-6);
        }
        for &t in &[-3.0, -0.5, 0.0, 0.7, 4.0] {
            assert_eq!(case.dirichlet_trace(t), case.u(t, 0.0));
            let e = 1e-4;
            let d2 =
                (-case.u(t, 2.0 * e) + 8.0 * case.u(t, e) - 8.0 * case.u(t, -e) + case.u(t, -2.0 * e)) / (12.0 * e);
            assert!((case.neumann_trace(t) + d2).abs() < 1e-10);
        }
    }
}

#[test]
fn boundary_data_checks_extensions() {
    let g: RealFn = Arc::new(|t| 1.0 / (1.0 + t * t));
    let h: RealFn = Arc::new(|t| t / (1.0 + t * t));
    let g0: RealFn = Arc::new(|t| 1.0 / (1.0 + t * t) + bump(t, 2.0, 1.0, 1.0));
    assert!(BoundaryData::new(g.clone(), h.clone(), g0, h.clone()).is_ok());
    let wrong: RealFn = Arc::new(|t| 1.0 / (1.0 + t * t) + bump(t, -2.0, 1.0, 1.0));
    assert!(matches!(
        BoundaryData::new(g.clone(), h.clone(), wrong, h.clone()),
        Err(Error::InvalidArgument(_))
    ));
    let d = HarmonicCase::Case1.boundary_data(ExtensionMode::BumpPerturbed);
    assert!((d.g0()(2.0) - HarmonicCase::Case1.dirichlet_trace(2.0) - 0.3 * (-1f64).exp()).abs() < 1e-15);
    assert_eq!(d.dirichlet(-2.0), d.g0()(-2.0));
    assert_eq!(d.neumann(2.5), d.h0()(2.5));
}

#[test]
fn double_layer_examples() {
    assert_eq!(double_layer(&|_| 0.0, [0.2, 0.7]).unwrap(), 0.0);
    let plateau = |r: f64| move |t: f64| 1.0 / (1.0 + (t / r).powi(8));
    let mut prev = f64::INFINITY;
    for r in [1e2, 1e3, 1e4] {
        let err = (double_layer(&plateau(r), [0.0, 1.0]).unwrap() - 0.5).abs();
        assert!(err < prev);
        prev = err;
    }
    assert!(prev < 1e-4, "{prev}");
    assert!(matches!(double_layer(&|_| 1.0, [0.0, 0.0]), Err(Error::Domain(_))));
}

#[test]
fn single_layer_examples() {
    let odd = |t: f64| t * (-t * t).exp();
    for x2 in [0.1, 1.0, 3.0] {
        let r = single_layer(&odd, [0.0, x2]).unwrap();
        assert!(r.value.abs() < 1e-14);
        assert!(!r.growth_warning);
    }
    // V b′(x) = (1/2π) ∫ (x₁ − τ)/|x − τ|² b(τ) dτ after integration by parts
    let b = |t: f64| bump(t, 0.5, 1.0, 1.0);
    let db = |t: f64| {
        let y = t - 0.5;
        if y.abs() < 1.0 {
            -2.0 * y / (1.0 - y * y).powi(2) * b(t)
        } else {
            0.0
        }
    };
    for x in [[0.2, 0.3], [1.7, 0.05], [-2.0, 1.0]] {
        let direct = single_layer(&db, x).unwrap().value;
        let parts = integrate_line(
            |t: f64| (x[0] - t) / ((x[0] - t).powi(2) + x[1] * x[1]) * b(t),
            &[-0.5, x[0], 1.5],
            QuadOptions::default(),
        )
        .value
            / (2.0 * PI);
        assert!((direct - parts).abs() < 1e-6, "{direct} {parts}");
    }
    let lump = single_layer(&|t: f64| (-t * t).exp(), [0.0, 1.0]).unwrap();
    assert!(lump.growth_warning && (lump.mean - PI.sqrt()).abs() < 1e-10);
}

#[test]
fn newton_potential_smoke() {
    assert_eq!(newton_potential(&|_, _| 0.0, [0.0, 1.0]).unwrap(), 0.0);
    let f = |y1: f64, y2: f64| (-(y1 * y1 + (y2 - 1.5).powi(2)) * 4.0).exp();
    let n = |a: f64, b: f64| newton_potential(&f, [a, b]).unwrap();
    let lap = lap4(&n, 0.1, 1.4, 0.05);
    assert!((lap - f(0.1, 1.4)).abs() < 1e-3 * f(0.1, 1.4), "{lap}");
}

#[test]
fn potentials_are_harmonic() {
    for (name, v) in densities() {
        let w = |a: f64, b: f64| double_layer(&*v, [a, b]).unwrap();
        let s = |a: f64, b: f64| single_layer(&*v, [a, b]).unwrap().value;
        for &(x1, x2) in &[(0.3, 0.5), (-1.0, 1.2), (2.0, 0.8)] {
            let sw = w(x1, x2).abs().max(1e-3);
            assert!(lap4(&w, x1, x2, 0.05).abs() < 1e-5 * sw / 0.25, "{name} W");
            let ss = s(x1, x2).abs().max(1e-3);
            assert!(lap4(&s, x1, x2, 0.05).abs() < 1e-5 * ss / 0.25, "{name} V");
        }
    }
}

#[test]
fn plemelj_jump() {
    let heights = [0.1, 0.05, 0.025];
    for (name, v) in densities() {
        let mut sup = [0.0f64; 3];
        for k in 0..=40 {
            let t = -2.0 + 0.1 * k as f64;
            let jump = |x2: f64| double_layer(&*v, [t, x2]).unwrap() - double_layer(&*v, [t, -x2]).unwrap();
            for (s, &h) in sup.iter_mut().zip(&heights) {
                *s = s.max((jump(h) - v(t)).abs());
            }
            let lim = richardson(|h| double_layer(&*v, [t, h]).unwrap(), 0.1);
            assert!((lim - 0.5 * v(t)).abs() < 1e-4, "{name} at {t}: {lim}");
        }
        assert!(sup[2] < sup[1] && sup[1] < sup[0], "{name} {sup:?}");
    }
}

#[test]
fn trace_operator_closed_forms() {
    // v = 1/(1+t²): V₋₁v = ¼ ln(1+t²), V₊₁v = ½ (1−t²)/(1+t²)²
    let v: RealFn = Arc::new(|t| 1.0 / (1.0 + t * t));
    let pts = [-5.0, -1.0, -0.2, 0.0, 0.4, 1.3, 8.0];
    for r in trace_operators(v, &pts).unwrap() {
        let t = r.t;
        assert!((r.v_minus1 - 0.25 * (1.0 + t * t).ln()).abs() < 1e-10, "{t}");
        assert!(
            (r.v_plus1 - 0.5 * (1.0 - t * t) / (1.0 + t * t).powi(2)).abs() < 1e-9,
            "{t}"
        );
        assert_eq!((r.w0, r.w0_star), (0.0, 0.0));
    }
    let ops = TraceOperators::new(Arc::new(|t| (-t * t).exp()));
    assert!(matches!(ops.single_layer(f64::NAN), Err(Error::Evaluation(_))));
}

#[test]
fn hypersingular_matches_normal_derivative_limit() {
    let v = |t: f64| (-t * t).exp();
    let ops = TraceOperators::new(Arc::new(v));
    let mut miss: f64 = 0.0;
    for &t in &[-1.5, -0.4, 0.0, 0.3, 1.1, 2.5] {
        // −∂₂ W v(t, x₂)
        let d = |x2: f64| {
            -integrate_line(
                |s: f64| {
                    let a = (t - s).powi(2);
                    v(s) * (a - x2 * x2) / (a + x2 * x2).powi(2)
                },
                &[t - 10.0 * x2, t - x2, t, t + x2, t + 10.0 * x2],
                QuadOptions::default(),
            )
            .value
                / (2.0 * PI)
        };
        let lim = richardson(d, 0.1);
        let direct = ops.hypersingular(t).unwrap();
        assert!((lim - direct).abs() < 2e-4, "{t}: {lim} {direct}");
        miss = miss.max((lim - (direct - v(t))).abs());
    }
    // the form with an extra −v(t) term misses the limit
    assert!(miss > 0.5);
}

struct Runs {
    outcomes: Vec<(HarmonicCase, ExtensionMode, BvpOutcome)>,
}

fn runs() -> &'static Runs {
    static R: OnceLock<Runs> = OnceLock::new();
    R.get_or_init(|| {
        let mut outcomes = Vec::new();
        for case in HarmonicCase::ALL {
            for mode in [ExtensionMode::TrueTrace, ExtensionMode::BumpPerturbed] {
                let o = run_manufactured(case, mode, &default_probes(), &BvpOptions::default()).unwrap();
                outcomes.push((case, mode, o));
            }
        }
        Runs { outcomes }
    })
}

#[test]
fn zero_data_gives_zero_solution() {
    let opts = BvpOptions {
        n: 1024,
        t_min: 1e-16,
        t_max: 1e20,
        ..Default::default()
    };
    let data = BoundaryData::zero();
    let inst = assemble_model_system(&data, &opts).unwrap();
    assert_eq!(inst.g.max_abs() + inst.h.max_abs(), 0.0);
    let c = solve_corrections(&inst, &opts).unwrap();
    assert_eq!(c.phi0.max_abs() + c.psi0.max_abs(), 0.0);
    let (u, _) = reconstruct(&data, &c, &default_probes()).unwrap();
    assert!(u.iter().all(|v| *v == 0.0));
}

#[test]
fn reconstruction_rejects_boundary_probes() {
    let (_, _, o) = &runs().outcomes[0];
    let data = HarmonicCase::Case1.boundary_data(ExtensionMode::TrueTrace);
    assert!(matches!(
        reconstruct(&data, &o.corrections, &[[0.0, 0.0]]),
        Err(Error::Domain(_))
    ));
}

#[test]
fn true_extensions_need_no_correction() {
    for (case, mode, o) in &runs().outcomes {
        if *mode != ExtensionMode::TrueTrace {
            continue;
        }
        let c = &o.corrections;
        for k in 0..c.phi0.len() {
            let t = c.phi0.node(k);
            if t > 1e-8 {
                assert!(c.phi0.values()[k].norm() < 1e-8, "{} phi0 at {t}", case.name());
                assert!(c.psi0.values()[k].norm() < 1e-8, "{} psi0 at {t}", case.name());
            }
        }
        assert!(o.summary.calderon.dirichlet_identity < 1e-4 && o.summary.calderon.neumann_identity < 1e-4);
        assert!(o.summary.max_relative_error < 1e-3);
    }
}

#[test]
fn corrections_cancel_bumps() {
    for (case, mode, o) in &runs().outcomes {
        if *mode != ExtensionMode::BumpPerturbed {
            continue;
        }
        let c = &o.corrections;
        for k in 0..c.phi0.len() {
            let t = c.phi0.node(k);
            let ep = (c.phi0.values()[k].re + mode.dirichlet_defect(t)).abs();
            let eq = (c.psi0.values()[k].re + mode.neumann_defect(-t)).abs();
            assert!(ep < 1e-3, "{} phi0 at {t}: {ep}", case.name());
            assert!(t.sqrt().min(1.0) * eq < 1e-3, "{} psi0 at {t}: {eq}", case.name());
            if (1e-2..=1e2).contains(&t) {
                assert!(eq < 1e-3, "{} psi0 at {t}: {eq}", case.name());
            }
        }
        assert!(o.summary.calderon.dirichlet_identity < 1e-4 && o.summary.calderon.neumann_identity < 1e-4);
        assert!(o.summary.max_relative_error < 1e-3);
        assert!(!o.summary.zero_mean_warning);
    }
}

#[test]
fn reconstruction_is_extension_invariant() {
    let r = &runs().outcomes;
    for pair in r.chunks(2) {
        for (a, b) in pair[0].2.records.iter().zip(&pair[1].2.records) {
            assert!((a.u_reconstructed - b.u_reconstructed).abs() < 1e-3 * a.u_exact.abs().max(0.1));
        }
    }
}

#[test]
fn probe_csv_and_summary_json() {
    let (_, _, o) = &runs().outcomes[1];
    let mut buf = Vec::new();
    write_probe_csv(&o.records, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(text.lines().next().unwrap(), "x1,x2,u_reconstructed,u_exact,abs_err");
    assert_eq!(text.lines().count(), 26);
    let v = serde_json::to_value(&o.summary).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["spec"]["case_name"], "case1");
    assert_eq!(v["spec"]["formula_id"], "re_inv_z_plus_i");
    assert_eq!(v["spec"]["extension_mode"], "bump_perturbed");
    assert_eq!(v["spec"]["grid"]["n"], 8192);
    let back: CaseSpec = serde_json::from_value(v["spec"].clone()).unwrap();
    assert_eq!(back, o.summary.spec);
}
