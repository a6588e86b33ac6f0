use super::config::*;
use crate::bie_solver::{
    manufactured_instance, solve_mellin, solve_nystrom, Method, ModelSystemInstance, NystromMesh, SolveOptions,
    SolveReport, SystemSolution,
};
use crate::error::{invalid, Error, Result};
use crate::fredholm_analysis::{
    bvp_criterion, ellipticity_refined, local_invertibility_at_zero, scan_region, winding_refined, ScanOptions,
    ELLIPTICITY_TOL,
};
use crate::mellin_core::grid::fmt;
use crate::mellin_core::{mellin_forward, mellin_symbol, LogGridFunction, MellinLine};
use crate::potential_theory::{default_probes, run_manufactured, write_probe_csv};
use crate::symbol_calculus::{sample_det_curve, Closure, DetSource, RectanglePath, SpaceParams, SymbolSpec};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub(super) type Artifacts = Vec<(String, Vec<u8>)>;

fn json<T: Serialize>(v: &T) -> Result<Vec<u8>> {
    let mut b = serde_json::to_vec_pretty(v)?;
    b.push(b'\n');
    Ok(b)
}

fn source(p: f64, r: f64, closure: Closure, composite: &Option<CompositeDoc>) -> Result<DetSource> {
    let params = SpaceParams::new(p, r)?;
    Ok(match composite {
        None => DetSource::System { params, closure },
        Some(doc) => {
            let terms = doc.terms.iter().map(|t| (t.d.into(), t.c.into())).collect();
            let mut spec = SymbolSpec::new(doc.d0.into(), terms, params)?.with_closure(closure);
            if let Some(g) = doc.gamma {
                spec = spec.with_gamma(g.into())?;
            }
            DetSource::Composite(spec)
        }
    })
}

/// `lo, lo + step, …, hi`, snapped to 12 decimals so that grid values such
/// as `p = 2` are exact.
fn range(lo: f64, hi: f64, step: f64, what: &str) -> Result<Vec<f64>> {
    if !(step > 0.0 && hi >= lo && lo.is_finite() && hi.is_finite()) {
        return Err(Error::Config(format!("{what} range needs lo ≤ hi and step > 0")));
    }
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    if n > 100_000 {
        return Err(Error::Config(format!("{what} range has too many points")));
    }
    Ok((0..=n)
        .map(|k| ((lo + step * k as f64) * 1e12).round() / 1e12)
        .collect())
}

#[derive(Serialize)]
struct SymbolReport {
    schema_version: u32,
    p: f64,
    r: f64,
    closure: Closure,
    composite: bool,
    samples_per_edge: usize,
    min_abs_det: f64,
    arg_min: String,
    max_abs_det: f64,
    elliptic: bool,
    gamma1_min_abs_det: f64,
    gamma1_elliptic: bool,
    kernel_max_abs_error: Option<f64>,
    kernel_truncation_warning: Option<bool>,
}

pub(super) fn symbol(prm: &SymbolParams) -> Result<Artifacts> {
    if prm.samples_per_edge < 8 {
        return Err(Error::Config("samples_per_edge must be at least 8".into()));
    }
    let src = source(prm.p, prm.r, prm.closure, &prm.composite)?;
    let path = RectanglePath::new(prm.samples_per_edge)?;
    let curve = sample_det_curve(&src, &path)?;
    let mut csv_bytes = Vec::new();
    curve.write_csv(&mut csv_bytes)?;
    let rep = ellipticity_refined(&src, &path, ELLIPTICITY_TOL)?;
    let g1 = local_invertibility_at_zero(&src)?;
    let mut out = vec![("det_curve.csv".to_string(), csv_bytes)];

    let mut kernel_err = None;
    let mut kernel_warn = None;
    if let Some(k) = &prm.kernel {
        let (csv_k, err, warn) = kernel_table(k)?;
        out.push(("kernel_symbol.csv".into(), csv_k));
        kernel_err = err;
        kernel_warn = warn;
    }
    let report = SymbolReport {
        schema_version: crate::SCHEMA_VERSION,
        p: prm.p,
        r: prm.r,
        closure: prm.closure,
        composite: prm.composite.is_some(),
        samples_per_edge: prm.samples_per_edge,
        min_abs_det: rep.min_abs_det,
        arg_min: rep.arg_min.to_string(),
        max_abs_det: rep.max_abs_det,
        elliptic: rep.elliptic,
        gamma1_min_abs_det: g1.min_abs_det,
        gamma1_elliptic: g1.elliptic,
        kernel_max_abs_error: kernel_err,
        kernel_truncation_warning: kernel_warn,
    };
    out.push(("symbol_report.json".into(), json(&report)?));
    Ok(out)
}

/// Closed-form symbol and, for kernels without poles on `(0, ∞)`, the
/// numerical transform of the kernel part.
fn kernel_table(k: &KernelParams) -> Result<(Vec<u8>, Option<f64>, Option<bool>)> {
    let (kernel, c0, c1) = k.document.clone().into_parts()?;
    let line = MellinLine::new(k.beta)?;
    if k.xi_points < 2 || !(k.xi_max > 0.0) {
        return Err(Error::Config("kernel table needs xi_points ≥ 2 and xi_max > 0".into()));
    }
    let xi: Vec<f64> = (0..k.xi_points)
        .map(|j| -k.xi_max + 2.0 * k.xi_max * j as f64 / (k.xi_points - 1) as f64)
        .collect();
    let z = Complex64::new(0.0, 0.0);
    let numeric = if kernel.terms.iter().any(|t| t.pole_on_positive_axis()) {
        None
    } else {
        let u = LogGridFunction::from_fn(k.t_min, k.t_max, k.n, |t| kernel.eval(Complex64::new(t, 0.0)))?;
        Some(mellin_forward(&u, line, &xi))
    };
    let mut wr = csv::Writer::from_writer(Vec::new());
    wr.write_record([
        "xi",
        "re_symbol",
        "im_symbol",
        "re_kernel_exact",
        "im_kernel_exact",
        "re_kernel_numeric",
        "im_kernel_numeric",
    ])?;
    let mut err: f64 = 0.0;
    for (j, &x) in xi.iter().enumerate() {
        let full = mellin_symbol(&kernel, c0, c1, line, x)?;
        let exact = mellin_symbol(&kernel, z, z, line, x)?;
        let (nre, nim) = match &numeric {
            Some(f) => {
                let v = f.value[j];
                err = err.max((v - exact).norm());
                (fmt(v.re), fmt(v.im))
            }
            None => (String::new(), String::new()),
        };
        wr.write_record(&[
            fmt(x),
            fmt(full.re),
            fmt(full.im),
            fmt(exact.re),
            fmt(exact.im),
            nre,
            nim,
        ])?;
    }
    let bytes = wr.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok((
        bytes,
        numeric.as_ref().map(|_| err),
        numeric.map(|f| f.truncation_warning),
    ))
}

pub(super) fn scan(prm: &ScanParams) -> Result<Artifacts> {
    let p = range(prm.p_min, prm.p_max, prm.p_step, "p")?;
    let r = range(prm.r_min, prm.r_max, prm.r_step, "r")?;
    let opts = ScanOptions {
        samples_per_edge: prm.samples_per_edge,
        closure: prm.closure,
        tolerance: prm.tolerance,
        anchor: (prm.anchor[0], prm.anchor[1]),
    };
    let map = scan_region(&p, &r, &opts)?;
    let mut csv_bytes = Vec::new();
    map.write_csv(&mut csv_bytes)?;
    let mut summary = Vec::new();
    map.write_summary_json(&mut summary)?;
    summary.push(b'\n');
    let mut out = vec![
        ("region_map.csv".to_string(), csv_bytes),
        ("region_summary.json".into(), summary),
    ];
    if let Some(c) = &prm.criterion {
        let mut wr = csv::Writer::from_writer(Vec::new());
        wr.write_record(["p", "s", "r", "verdict"])?;
        for &pv in &c.p_values {
            for s in range(0.0, c.s_max, c.s_step, "s")? {
                if s <= 1.0 / pv + 1e-12 {
                    continue;
                }
                let v = bvp_criterion(pv, s)?;
                wr.write_record(&[fmt(pv), fmt(s), fmt(s - 1.0 / pv), v.name().to_string()])?;
            }
        }
        out.push((
            "bvp_criterion.csv".into(),
            wr.into_inner().map_err(|e| Error::Io(e.into_error()))?,
        ));
    }
    Ok(out)
}

#[derive(Serialize)]
struct IndexJson {
    schema_version: u32,
    p: f64,
    r: f64,
    closure: Closure,
    composite: bool,
    winding_number: i64,
    operator_index: i64,
    gamma1_elliptic: bool,
    gamma1_min_abs_det: f64,
}

pub(super) fn index(prm: &IndexParams) -> Result<Artifacts> {
    let src = source(prm.p, prm.r, prm.closure, &prm.composite)?;
    let g1 = local_invertibility_at_zero(&src)?;
    let w = winding_refined(&src, prm.samples_per_edge)?;
    let report = IndexJson {
        schema_version: crate::SCHEMA_VERSION,
        p: prm.p,
        r: prm.r,
        closure: prm.closure,
        composite: prm.composite.is_some(),
        winding_number: w.winding_number,
        operator_index: w.operator_index,
        gamma1_elliptic: g1.elliptic,
        gamma1_min_abs_det: g1.min_abs_det,
    };
    Ok(vec![("index_report.json".into(), json(&report)?)])
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::MellinDiagonal => "mellin_diagonal",
        Method::Nystrom => "nystrom",
    }
}

#[derive(Serialize)]
struct ExactError {
    method: Method,
    phi: f64,
    psi: f64,
}

#[derive(Serialize)]
struct SolveJson {
    schema_version: u32,
    seed: u64,
    data: &'static str,
    truncation_warning: bool,
    solutions: Vec<SolveReport>,
    cross_method_distance: Option<f64>,
    error_vs_exact: Vec<ExactError>,
}

fn rel(a: &LogGridFunction, b: &LogGridFunction) -> Result<f64> {
    let d = a.zip_map(b, |x, y| x - y)?.l2_norm();
    let s = b.l2_norm();
    Ok(if s > 0.0 { d / s } else { d })
}

pub(super) fn solve(prm: &SolveParams, seed: u64) -> Result<Artifacts> {
    if prm.methods.is_empty() {
        return Err(Error::Config("methods must name at least one solver".into()));
    }
    let line = MellinLine::new(prm.beta)?;
    let (instance, exact, kind) = match &prm.data {
        SolveData::Manufactured => {
            let m = manufactured_instance(&mut ChaCha8Rng::seed_from_u64(seed), line, prm.t_min, prm.t_max, prm.n)?;
            (m.instance, Some((m.phi, m.psi)), "manufactured")
        }
        SolveData::Files { g, h } => {
            let g = LogGridFunction::read_csv(std::fs::File::open(g)?)?;
            let h = LogGridFunction::read_csv(std::fs::File::open(h)?)?;
            (ModelSystemInstance::new(g, h, line)?, None, "files")
        }
    };
    let opts = SolveOptions {
        padding: prm.padding,
        cond_max: prm.cond_max,
        record_timings: false,
    };
    let mut sols: Vec<SystemSolution> = Vec::new();
    for &m in &prm.methods {
        let s = match m {
            Method::MellinDiagonal => solve_mellin(&instance, &opts)?,
            Method::Nystrom => {
                let mesh = NystromMesh::geometric(instance.g.t_max(), prm.nystrom_ratio, prm.nystrom_nodes)
                    .map_err(|_| invalid("nystrom_ratio must exceed 1 and nystrom_nodes be at least 2"))?;
                solve_nystrom(&instance, &mesh, &opts)?
            }
        };
        sols.push(s);
    }
    let mut out = Vec::new();
    for s in &sols {
        let name = method_name(s.method);
        let mut a = Vec::new();
        s.phi.write_csv(&mut a)?;
        let mut b = Vec::new();
        s.psi.write_csv(&mut b)?;
        out.push((format!("phi_{name}.csv"), a));
        out.push((format!("psi_{name}.csv"), b));
    }
    let error_vs_exact = match &exact {
        Some((phi, psi)) => sols
            .iter()
            .map(|s| {
                Ok(ExactError {
                    method: s.method,
                    phi: rel(&s.phi, phi)?,
                    psi: rel(&s.psi, psi)?,
                })
            })
            .collect::<Result<_>>()?,
        None => Vec::new(),
    };
    let report = SolveJson {
        schema_version: crate::SCHEMA_VERSION,
        seed,
        data: kind,
        truncation_warning: instance.truncation_warning(),
        solutions: sols.iter().map(|s| s.report()).collect(),
        cross_method_distance: if sols.len() >= 2 {
            Some(sols[0].relative_distance(&sols[1])?)
        } else {
            None
        },
        error_vs_exact,
    };
    out.push(("solve_report.json".into(), json(&report)?));
    Ok(out)
}

pub(super) fn bvp(prm: &BvpParams) -> Result<Artifacts> {
    let probes = prm.probes.clone().unwrap_or_else(default_probes);
    if probes.is_empty() {
        return Err(Error::Config("probes must not be empty".into()));
    }
    let o = run_manufactured(prm.case, prm.extension_mode, &probes, &prm.grid)?;
    let mut csv_bytes = Vec::new();
    write_probe_csv(&o.records, &mut csv_bytes)?;
    Ok(vec![
        ("probes.csv".into(), csv_bytes),
        ("case_spec.json".into(), json(&o.summary.spec)?),
        ("bvp_summary.json".into(), json(&o.summary)?),
    ])
}
