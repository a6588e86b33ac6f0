use mellin_bie::symbol_calculus::*;
use num_complex::Complex64 as C;
use proptest::prelude::*;
use std::f64::consts::PI;

const I: C = C::new(0.0, 1.0);
const L: f64 = 1e10;

fn sp(p: f64, r: f64) -> SpaceParams {
    SpaceParams::new(p, r).unwrap()
}

fn pt(edge: Edge, coord: f64) -> RectanglePoint {
    RectanglePoint::new(edge, coord).unwrap()
}

/// Pairs of points approaching each identified corner from its two edges.
fn corner_pairs() -> [(RectanglePoint, RectanglePoint); 4] {
    [
        (pt(Edge::Gamma1, -L), pt(Edge::Gamma2Minus, L)),
        (pt(Edge::Gamma2Minus, 0.0), pt(Edge::Gamma3, -L)),
        (pt(Edge::Gamma3, L), pt(Edge::Gamma2Plus, 0.0)),
        (pt(Edge::Gamma2Plus, L), pt(Edge::Gamma1, L)),
    ]
}

fn exact_corners() -> [(RectanglePoint, RectanglePoint); 4] {
    let inf = f64::INFINITY;
    [
        (pt(Edge::Gamma1, -inf), pt(Edge::Gamma2Minus, inf)),
        (pt(Edge::Gamma2Minus, 0.0), pt(Edge::Gamma3, -inf)),
        (pt(Edge::Gamma3, inf), pt(Edge::Gamma2Plus, 0.0)),
        (pt(Edge::Gamma2Plus, inf), pt(Edge::Gamma1, inf)),
    ]
}

fn oracle_k1_minus_one(p: f64, s: f64, xi: f64) -> C {
    let z = C::new(1.0 / p, -xi);
    C::from_polar(1.0, -PI * s) / (PI * z).sin()
}

fn oracle_det(p: f64, r: f64, xi: f64) -> C {
    let z = C::new(1.0 / p, -xi);
    let e = C::from_polar(1.0, 2.0 * PI * r);
    (e * (PI * (z + r)).sin().powi(2) - e.conj()) / (PI * z).sin().powi(2)
}

#[test]
fn identity_examples() {
    for w in [
        pt(Edge::Gamma1, 0.3),
        pt(Edge::Gamma2Plus, 2.0),
        pt(Edge::Gamma3, -1.0),
        pt(Edge::Gamma2Minus, 0.5),
    ] {
        assert!((identity_symbol(&sp(3.0, 0.0), w).unwrap() - 1.0).norm() < 1e-15);
    }
    assert!((identity_symbol(&sp(2.0, 0.5), pt(Edge::Gamma3, 0.0)).unwrap() - I).norm() < 1e-15);
    assert!(identity_symbol(&sp(2.0, -0.5), pt(Edge::Gamma1, 0.0)).unwrap().norm() < 1e-15);
}

#[test]
fn k1_examples() {
    let m1 = C::new(-1.0, 0.0);
    assert_eq!(
        k1_symbol(C::new(0.5, 0.5), &sp(1.5, 0.2), pt(Edge::Gamma2Plus, 3.0)).unwrap(),
        C::new(0.0, 0.0)
    );
    assert!((k1_symbol(m1, &sp(2.0, 0.0), pt(Edge::Gamma1, 0.0)).unwrap() - 1.0).norm() < 1e-14);
    assert!((k1_symbol(m1, &sp(2.0, -0.5), pt(Edge::Gamma1, 0.0)).unwrap() - I).norm() < 1e-14);
}

#[test]
fn composite_examples() {
    let z = C::new(0.0, 0.0);
    let one = C::new(1.0, 0.0);
    let m1 = C::new(-1.0, 0.0);
    let w = pt(Edge::Gamma1, 0.0);
    let id = SymbolSpec::new(one, vec![], sp(2.0, 0.0)).unwrap();
    for w in [w, pt(Edge::Gamma2Minus, 4.0), pt(Edge::Gamma3, 1.0)] {
        assert!((composite_symbol(&id, w).unwrap() - 1.0).norm() < 1e-15);
    }
    let k = SymbolSpec::new(z, vec![(one, m1)], sp(2.0, 0.0)).unwrap();
    assert!((composite_symbol(&k, w).unwrap() - 1.0).norm() < 1e-14);
    let both = SymbolSpec::new(one, vec![(one, m1)], sp(2.0, 0.0)).unwrap();
    assert!((composite_symbol(&both, w).unwrap() - 2.0).norm() < 1e-14);
}

#[test]
fn spec_rejects_bad_branch_data() {
    let one = C::new(1.0, 0.0);
    assert!(SymbolSpec::new(one, vec![(one, C::new(0.0, 2.0))], sp(2.0, 0.0)).is_err());
    assert!(SymbolSpec::new(one, vec![], sp(2.0, 0.0))
        .unwrap()
        .with_gamma(C::new(0.0, -1.0))
        .is_err());
    assert!(SpaceParams::new(1.0, 0.0).is_err());
}

#[test]
fn system_examples() {
    let m = system_symbol(&sp(2.0, 0.0), pt(Edge::Gamma1, 0.0), Closure::Localized).unwrap();
    assert!((m.get(0, 0) - 1.0).norm() < 1e-14 && (m.get(0, 1) - 1.0).norm() < 1e-14);
    assert!(m.det().norm() < 1e-14);
    let m = system_symbol(&sp(2.0, -0.5), pt(Edge::Gamma1, 0.0), Closure::Localized).unwrap();
    assert!(m.get(0, 0).norm() < 1e-14 && (m.get(0, 1) - I).norm() < 1e-14);
    assert!((m.det() - 1.0).norm() < 1e-14);
    for p in [1.3, 2.0, 7.0] {
        let m = system_symbol(&sp(p, 0.0), pt(Edge::Gamma2Plus, 0.7), Closure::Localized).unwrap();
        assert_eq!(m.get(0, 1), C::new(0.0, 0.0));
        assert!((m.det() - 1.0).norm() < 1e-14);
    }
}

#[test]
fn det_curve_examples() {
    let path = RectanglePath::new(1024).unwrap();
    assert_eq!(path.len(), 4096);
    let id = SymbolSpec::new(C::new(1.0, 0.0), vec![], sp(2.0, 0.0)).unwrap();
    let c = sample_det_curve(&DetSource::Composite(id), &path).unwrap();
    assert!(c.values.iter().all(|v| (v - 1.0).norm() < 1e-15));

    let anchor = DetSource::System {
        params: sp(2.0, -0.5),
        closure: Closure::Localized,
    };
    let c = sample_det_curve(&anchor, &path).unwrap();
    assert!(c.min_abs().0 > 0.1, "min |det| = {}", c.min_abs().0);

    let degenerate = DetSource::System {
        params: sp(2.0, 0.0),
        closure: Closure::Localized,
    };
    let odd = RectanglePath::new(1025).unwrap();
    let c = sample_det_curve(&degenerate, &odd).unwrap();
    let (m, w) = c.min_abs();
    assert!(m < 1e-12);
    assert_eq!(w.edge, Edge::Gamma1);
    assert!(w.coord.abs() < 1e-12);
}

#[test]
fn det_curve_csv_has_header_and_rows() {
    let path = RectanglePath::new(8).unwrap();
    let c = sample_det_curve(
        &DetSource::System {
            params: sp(2.0, -0.5),
            closure: Closure::Localized,
        },
        &path,
    )
    .unwrap();
    let mut buf = Vec::new();
    c.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("u,edge,re_det,im_det"));
    assert_eq!(lines.count(), 32);
    assert!(text.contains(",Gamma2minus,"));
}

fn all_symbols(p: f64, s: f64, c: C, w: RectanglePoint) -> Vec<C> {
    let params = sp(p, s);
    let mut out = vec![identity_symbol(&params, w).unwrap(), k1_symbol(c, &params, w).unwrap()];
    for closure in [Closure::Localized, Closure::Verbatim] {
        let spec = SymbolSpec::new(C::new(0.7, -0.2), vec![(C::new(1.3, 0.4), c)], params)
            .unwrap()
            .with_closure(closure);
        out.push(composite_symbol(&spec, w).unwrap());
        out.push(system_symbol(&params, w, closure).unwrap().det());
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn corners_are_continuous(p in 1.05f64..20.0, s in -2.5f64..2.5, arg in 0.55f64..1.45) {
        // arg c in (π/2, 3π/2) keeps 0 < |arg(c i)| < π
        let c = C::from_polar(0.8, arg * PI);
        for (a, b) in corner_pairs().into_iter().chain(exact_corners()) {
            for (x, y) in all_symbols(p, s, c, a).into_iter().zip(all_symbols(p, s, c, b)) {
                prop_assert!((x - y).norm() < 1e-8, "{a} vs {b}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn k1_collapses_at_minus_one(p in 1.05f64..20.0, s in -3.0f64..3.0, xi in -8.0f64..8.0) {
        let v = k1_symbol(C::from_polar(1.0, PI), &sp(p, s), pt(Edge::Gamma1, xi)).unwrap();
        let o = oracle_k1_minus_one(p, s, xi);
        prop_assert!((v - o).norm() <= 1e-12 * o.norm().max(1e-300), "{v} vs {o}");
    }

    #[test]
    fn system_is_symmetric(p in 1.05f64..20.0, r in -3.0f64..3.0, e in 0usize..4, x in -50.0f64..50.0, verbatim: bool) {
        let edge = Edge::CLOCKWISE[e];
        let coord = if matches!(edge, Edge::Gamma2Plus | Edge::Gamma2Minus) { x.abs() } else { x };
        let closure = if verbatim { Closure::Verbatim } else { Closure::Localized };
        let m = system_symbol(&sp(p, r), pt(edge, coord), closure).unwrap();
        prop_assert_eq!(m.get(0, 0), m.get(1, 1));
        prop_assert_eq!(m.get(0, 1), m.get(1, 0));
        let d = m.get(0, 0);
        let o = m.get(0, 1);
        prop_assert!((m.det() - (d * d - o * o)).norm() <= 1e-14 * (d.norm_sqr() + o.norm_sqr()).max(1.0));
    }

    #[test]
    fn gamma1_determinant_formula(p in 1.05f64..20.0, r in -3.0f64..3.0, xi in -5.0f64..5.0) {
        let det = system_symbol(&sp(p, r), pt(Edge::Gamma1, xi), Closure::Localized).unwrap().det();
        let o = oracle_det(p, r, xi);
        prop_assert!((det - o).norm() < 1e-10 * o.norm().max(1.0), "{det} vs {o}");
    }
}
