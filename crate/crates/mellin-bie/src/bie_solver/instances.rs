use super::{apply_k, ModelSystemInstance};
use crate::error::Result;
use crate::mellin_core::{LogGridFunction, MellinLine};
use rand::Rng;

/// An instance together with the solution it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct ManufacturedInstance {
    pub instance: ModelSystemInstance,
    pub phi: LogGridFunction,
    pub psi: LogGridFunction,
}

fn random_profile<R: Rng>(rng: &mut R) -> Vec<(f64, f64, f64)> {
    (0..3)
        .map(|_| {
            (
                rng.random_range(-1.0..1.0),
                rng.random_range(0.25..1.5),
                rng.random_range(0.5..3.0),
            )
        })
        .collect()
}

/// Random smooth decaying `φ, ψ` (sums of `a t^q e^{−bt}`) and the data
/// `G = φ + Kψ`, `H = ψ + Kφ` computed by quadrature.
pub fn manufactured_instance<R: Rng>(
    rng: &mut R,
    line: MellinLine,
    t_min: f64,
    t_max: f64,
    n: usize,
) -> Result<ManufacturedInstance> {
    let eval = |terms: &[(f64, f64, f64)], t: f64| -> f64 {
        terms.iter().map(|(a, q, b)| a * t.powf(*q) * (-b * t).exp()).sum()
    };
    let pa = random_profile(rng);
    let pb = random_profile(rng);
    let phi = LogGridFunction::from_real_fn(t_min, t_max, n, |t| eval(&pa, t))?;
    let psi = LogGridFunction::from_real_fn(t_min, t_max, n, |t| eval(&pb, t))?;
    let g = phi.zip_map(&apply_k(&psi)?, |a, b| a + b)?;
    let h = psi.zip_map(&apply_k(&phi)?, |a, b| a + b)?;
    Ok(ManufacturedInstance {
        instance: ModelSystemInstance::new(g, h, line)?,
        phi,
        psi,
    })
}
