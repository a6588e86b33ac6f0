use super::{finish, Method, ModelSystemInstance, SolveOptions, SystemSolution};
use crate::error::{invalid, Error, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Quadrature nodes on `(0, ∞)` with trapezoid weights in `ln s`.
#[derive(Debug, Clone, PartialEq)]
pub struct NystromMesh {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl NystromMesh {
    /// `n` nodes `s_j = t_top · ratio^{−(n−1−j)}`, graded geometrically toward 0.
    pub fn geometric(t_top: f64, ratio: f64, n: usize) -> Result<Self> {
        if !(t_top > 0.0 && t_top.is_finite() && ratio > 1.0 && n >= 2) {
            return Err(invalid("geometric mesh needs t_top > 0, ratio > 1, n ≥ 2"));
        }
        let nodes = (0..n).map(|j| t_top * ratio.powi(-((n - 1 - j) as i32))).collect();
        Self::from_nodes(nodes)
    }

    /// Default mesh: ratio 1.15, 512 nodes, top node at `t_top`.
    pub fn default_for(t_top: f64) -> Result<Self> {
        Self::geometric(t_top, 1.15, 512)
    }

    /// Increasing positive nodes; weights `s_j (y_{j+1} − y_{j−1})/2` with
    /// `y = ln s` (one-sided at the ends).
    pub fn from_nodes(nodes: Vec<f64>) -> Result<Self> {
        if nodes.len() < 2 || nodes[0] <= 0.0 || nodes.windows(2).any(|w| w[1] <= w[0]) {
            return Err(invalid("mesh nodes must be positive and strictly increasing"));
        }
        let n = nodes.len();
        let y: Vec<f64> = nodes.iter().map(|s| s.ln()).collect();
        let weights = (0..n)
            .map(|j| {
                let lo = if j == 0 { y[0] } else { y[j - 1] };
                let hi = if j + 1 == n { y[n - 1] } else { y[j + 1] };
                nodes[j] * 0.5 * (hi - lo)
            })
            .collect();
        Ok(NystromMesh { nodes, weights })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `K_ij = w_j / (π (s_i + s_j))`.
    pub fn kernel_matrix(&self) -> DMatrix<f64> {
        let s = &self.nodes;
        let w = &self.weights;
        DMatrix::from_fn(s.len(), s.len(), |i, j| w[j] / (PI * (s[i] + s[j])))
    }

    /// `W^{1/2} K W^{−1/2}`, symmetric since the kernel is.
    pub fn symmetrized_kernel(&self) -> DMatrix<f64> {
        let s = &self.nodes;
        let w = &self.weights;
        DMatrix::from_fn(s.len(), s.len(), |i, j| (w[i] * w[j]).sqrt() / (PI * (s[i] + s[j])))
    }
}

fn norm1(a: &DMatrix<f64>) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Hager's estimate of `‖A^{−1}‖₁` from factorizations of `A` and `Aᵀ`.
fn inverse_norm1_estimate(
    lu: &nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>,
    lu_t: &nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>,
    n: usize,
) -> Option<f64> {
    let mut x = DVector::from_element(n, 1.0 / n as f64);
    let mut est = 0.0;
    for _ in 0..5 {
        let y = lu.solve(&x)?;
        est = y.iter().map(|v| v.abs()).sum();
        let xi = y.map(|v| if v >= 0.0 { 1.0 } else { -1.0 });
        let z = lu_t.solve(&xi)?;
        let (j, zj) = z
            .iter()
            .enumerate()
            .map(|(k, v)| (k, v.abs()))
            .fold((0, f64::NEG_INFINITY), |b, c| if c.1 > b.1 { c } else { b });
        if zj <= z.dot(&x) {
            break;
        }
        x = DVector::zeros(n);
        x[j] = 1.0;
    }
    Some(est)
}

/// Dense collocation of the `2n × 2n` system `[[I, K], [K, I]]` on `mesh`,
/// with the data resampled by cubic splines in `ln t` and the solution
/// carried back to the instance grid by Nyström interpolation.
///
/// The system is solved in the symmetric form obtained by conjugating with
/// `W^{1/2}`, and the condition estimate refers to that form; the plain
/// collocation matrix differs from it only by a diagonal scaling whose own
/// condition number is the ratio of extreme weights.
pub fn solve_nystrom(
    instance: &ModelSystemInstance,
    mesh: &NystromMesh,
    opts: &SolveOptions,
) -> Result<SystemSolution> {
    let start = opts.record_timings.then(std::time::Instant::now);
    let n = mesh.len();
    let k = mesh.symmetrized_kernel();
    let mut a = DMatrix::<f64>::identity(2 * n, 2 * n);
    a.view_mut((0, n), (n, n)).copy_from(&k);
    a.view_mut((n, 0), (n, n)).copy_from(&k);

    let gi = instance.g.interpolant();
    let hi = instance.h.interpolant();
    let mut b = DMatrix::<f64>::zeros(2 * n, 2);
    for (j, &s) in mesh.nodes().iter().enumerate() {
        let sw = mesh.weights[j].sqrt();
        let (g, h) = (gi.eval(s) * sw, hi.eval(s) * sw);
        b[(j, 0)] = g.re;
        b[(j, 1)] = g.im;
        b[(n + j, 0)] = h.re;
        b[(n + j, 1)] = h.im;
    }

    let anorm = norm1(&a);
    let lu_t = a.transpose().lu();
    let lu = a.lu();
    let singular = || Error::Conditioning(f64::INFINITY);
    let inv = inverse_norm1_estimate(&lu, &lu_t, 2 * n).ok_or_else(singular)?;
    let cond = anorm * inv;
    if !(cond <= opts.cond_max) {
        return Err(Error::Conditioning(cond));
    }
    let y = lu.solve(&b).ok_or_else(singular)?;
    let unscale = |r: usize, j: usize| Complex64::new(y[(r, 0)], y[(r, 1)]) / mesh.weights[j].sqrt();
    let phi_m: Vec<Complex64> = (0..n).map(|j| unscale(j, j)).collect();
    let psi_m: Vec<Complex64> = (0..n).map(|j| unscale(n + j, j)).collect();

    let grid = &instance.g;
    let interpolate = |data: &[Complex64], other: &[Complex64]| -> Vec<Complex64> {
        (0..grid.len())
            .into_par_iter()
            .map(|i| {
                let t = grid.node(i);
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..n {
                    acc += other[j] * (mesh.weights[j] / (PI * (t + mesh.nodes[j])));
                }
                data[i] - acc
            })
            .collect()
    };
    let phi = grid.with_values(interpolate(instance.g.values(), &psi_m))?;
    let psi = grid.with_values(interpolate(instance.h.values(), &phi_m))?;
    finish(instance, phi, psi, Method::Nystrom, opts, start, Some(cond))
}
