use super::{local_invertibility_at_zero, winding_refined, ELLIPTICITY_TOL};
use crate::error::{invalid, Error, Result};
use crate::symbol_calculus::{Closure, DetSource, SpaceParams};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::io::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Fredholm,
    NotFredholm,
    UniquelySolvable,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Fredholm => "Fredholm",
            Verdict::NotFredholm => "NotFredholm",
            Verdict::UniquelySolvable => "UniquelySolvable",
        }
    }

    pub fn is_fredholm(&self) -> bool {
        !matches!(self, Verdict::NotFredholm)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanOptions {
    /// Samples per contour edge for winding numbers (doubled until stable).
    pub samples_per_edge: usize,
    pub closure: Closure,
    pub tolerance: f64,
    pub anchor: (f64, f64),
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            samples_per_edge: 257,
            closure: Closure::Localized,
            tolerance: ELLIPTICITY_TOL,
            anchor: (2.0, -0.5),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CellReport {
    pub p: f64,
    pub r: f64,
    pub verdict: Verdict,
    /// Full-contour winding number; `None` where the contour is not elliptic
    /// or the winding is not resolved.
    pub winding: Option<i64>,
    pub min_abs_det_gamma1: f64,
    pub numeric_elliptic: bool,
    /// Labelled by the closed-form predicate (within one grid step of
    /// `{p = 2} × ℤ`).
    pub exceptional: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionMap {
    pub p_grid: Vec<f64>,
    pub r_grid: Vec<f64>,
    /// Row-major: index `i * r_grid.len() + j` holds `(p_grid[i], r_grid[j])`.
    pub cells: Vec<CellReport>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct VerdictCounts {
    pub fredholm: usize,
    pub not_fredholm: usize,
    pub uniquely_solvable: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionSummary {
    pub schema_version: u32,
    pub counts: VerdictCounts,
    pub exceptional_cells: Vec<CellReport>,
    /// Uniquely solvable cells whose full-contour winding is not 0.
    pub winding_anomalies: Vec<CellReport>,
}

impl RegionMap {
    pub fn get(&self, i: usize, j: usize) -> &CellReport {
        &self.cells[i * self.r_grid.len() + j]
    }

    pub fn counts(&self) -> VerdictCounts {
        let mut c = VerdictCounts::default();
        for cell in &self.cells {
            match cell.verdict {
                Verdict::Fredholm => c.fredholm += 1,
                Verdict::NotFredholm => c.not_fredholm += 1,
                Verdict::UniquelySolvable => c.uniquely_solvable += 1,
            }
        }
        c
    }

    pub fn summary(&self) -> RegionSummary {
        RegionSummary {
            schema_version: crate::SCHEMA_VERSION,
            counts: self.counts(),
            exceptional_cells: self.cells.iter().filter(|c| c.exceptional).copied().collect(),
            winding_anomalies: self
                .cells
                .iter()
                .filter(|c| c.verdict == Verdict::UniquelySolvable && c.winding != Some(0))
                .copied()
                .collect(),
        }
    }

    /// CSV with header `p,r,verdict,winding,min_abs_det_gamma1`; an unresolved
    /// winding is an empty field.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["p", "r", "verdict", "winding", "min_abs_det_gamma1"])?;
        for c in &self.cells {
            wr.write_record(&[
                format!("{}", c.p),
                format!("{}", c.r),
                c.verdict.name().to_string(),
                c.winding.map(|w| w.to_string()).unwrap_or_default(),
                format!("{:e}", c.min_abs_det_gamma1),
            ])?;
        }
        wr.flush()?;
        Ok(())
    }

    pub fn write_summary_json<W: Write>(&self, w: W) -> Result<()> {
        serde_json::to_writer_pretty(w, &self.summary())?;
        Ok(())
    }
}

const EXACT: f64 = 1e-9;

fn is_nonneg_integer(x: f64) -> bool {
    x > -EXACT && (x - x.round()).abs() < EXACT
}

/// Closed-form predicate: not Fredholm iff `p = 2` and `r ∈ {0, 1, 2, …}`.
fn predicate_fredholm(p: f64, r: f64) -> bool {
    !((p - 2.0).abs() < EXACT && is_nonneg_integer(r))
}

/// Largest spacing to a neighbour of `g[i]`.
fn local_step(g: &[f64], i: usize) -> f64 {
    let mut s: f64 = 0.0;
    if i > 0 {
        s = s.max((g[i] - g[i - 1]).abs());
    }
    if i + 1 < g.len() {
        s = s.max((g[i + 1] - g[i]).abs());
    }
    s
}

fn check_grid(name: &str, g: &[f64]) -> Result<()> {
    if g.is_empty() {
        return Err(invalid(format!("{name} grid is empty")));
    }
    if g.iter().any(|x| !x.is_finite()) {
        return Err(Error::Domain(format!("{name} grid has non-finite entries")));
    }
    if g.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid(format!("{name} grid must be strictly increasing")));
    }
    Ok(())
}

/// Fredholm / unique-solvability map of the model system over `p_grid × r_grid`.
pub fn scan_region(p_grid: &[f64], r_grid: &[f64], opts: &ScanOptions) -> Result<RegionMap> {
    check_grid("p", p_grid)?;
    check_grid("r", r_grid)?;
    if p_grid.iter().any(|&p| p <= 1.0) {
        return Err(Error::Domain("p grid must lie in (1, ∞)".into()));
    }
    let nr = r_grid.len();
    let cells = (0..p_grid.len() * nr)
        .into_par_iter()
        .map(|idx| -> Result<CellReport> {
            let (i, j) = (idx / nr, idx % nr);
            let (p, r) = (p_grid[i], r_grid[j]);
            let params = SpaceParams::new(p, r)?;
            let source = DetSource::System {
                params,
                closure: opts.closure,
            };
            let local = local_invertibility_at_zero(&source)?;
            let numeric = local.min_abs_det > opts.tolerance * local.max_abs_det;
            let exceptional = (p - 2.0).abs() <= local_step(p_grid, i) + EXACT
                && (r - r.round()).abs() <= local_step(r_grid, j) + EXACT;
            let fredholm = if exceptional { predicate_fredholm(p, r) } else { numeric };
            let winding = winding_refined(&source, opts.samples_per_edge)
                .ok()
                .map(|w| w.winding_number);
            Ok(CellReport {
                p,
                r,
                verdict: if fredholm {
                    Verdict::Fredholm
                } else {
                    Verdict::NotFredholm
                },
                winding,
                min_abs_det_gamma1: local.min_abs_det,
                numeric_elliptic: numeric,
                exceptional,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut map = RegionMap {
        p_grid: p_grid.to_vec(),
        r_grid: r_grid.to_vec(),
        cells,
    };
    mark_uniquely_solvable(&mut map, opts.anchor);
    Ok(map)
}

/// Fredholm cells in the anchor's 4-connected Fredholm component with
/// `−1 < r < 0`. The anchor cell is the grid cell nearest to `anchor`,
/// provided it lies within one grid step.
fn mark_uniquely_solvable(map: &mut RegionMap, anchor: (f64, f64)) {
    let nearest = |g: &[f64], x: f64| -> Option<usize> {
        let (k, d) = g
            .iter()
            .enumerate()
            .map(|(k, v)| (k, (v - x).abs()))
            .fold((0, f64::INFINITY), |b, c| if c.1 < b.1 { c } else { b });
        (d <= local_step(g, k) + EXACT).then_some(k)
    };
    let (Some(i0), Some(j0)) = (nearest(&map.p_grid, anchor.0), nearest(&map.r_grid, anchor.1)) else {
        return;
    };
    let (np, nr) = (map.p_grid.len(), map.r_grid.len());
    if !map.get(i0, j0).verdict.is_fredholm() {
        return;
    }
    let mut seen = vec![false; np * nr];
    let mut queue = VecDeque::from([(i0, j0)]);
    seen[i0 * nr + j0] = true;
    while let Some((i, j)) = queue.pop_front() {
        let c = &mut map.cells[i * nr + j];
        if c.r > -1.0 + EXACT && c.r < -EXACT {
            c.verdict = Verdict::UniquelySolvable;
        }
        let mut push = |a: usize, b: usize| {
            if !seen[a * nr + b] && map.cells[a * nr + b].verdict.is_fredholm() {
                seen[a * nr + b] = true;
                queue.push_back((a, b));
            }
        };
        if i > 0 {
            push(i - 1, j);
        }
        if i + 1 < np {
            push(i + 1, j);
        }
        if j > 0 {
            push(i, j - 1);
        }
        if j + 1 < nr {
            push(i, j + 1);
        }
    }
}

/// Verdict for the mixed boundary value problem in the space `(p, s)`, via
/// the system order `r = s − 1/p`: not Fredholm iff `p = 2` and `r` is a
/// non-negative integer (equivalently `s ∈ 1/2 + ℤ`), uniquely solvable on
/// `1/2 < s < 3/2`.
pub fn bvp_criterion(p: f64, s: f64) -> Result<Verdict> {
    SpaceParams::new(p, s)?;
    let inv_p = 1.0 / p;
    if s <= inv_p {
        return Err(Error::TraceNonexistence { s, inv_p });
    }
    let r = s - inv_p;
    Ok(if !predicate_fredholm(p, r) {
        Verdict::NotFredholm
    } else if s > 0.5 && s < 1.5 {
        Verdict::UniquelySolvable
    } else {
        Verdict::Fredholm
    })
}
