//! The half-axis system `φ + Kψ = G`, `ψ + Kφ = H` solved by the Mellin
//! diagonalization and by Nyström collocation on a manufactured instance.

use mellin_bie::bie_solver::{manufactured_instance, solve_mellin, solve_nystrom, NystromMesh, SolveOptions};
use mellin_bie::mellin_core::MellinLine;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> mellin_bie::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let m = manufactured_instance(&mut rng, MellinLine::new(0.25)?, 1e-32, 1e12, 4096)?;
    let opts = SolveOptions {
        record_timings: true,
        ..Default::default()
    };
    let a = solve_mellin(&m.instance, &opts)?;
    let b = solve_nystrom(&m.instance, &NystromMesh::default_for(1e12)?, &opts)?;
    for s in [&a, &b] {
        let err = s.phi.zip_map(&m.phi, |x, y| x - y)?.l2_norm() / m.phi.l2_norm();
        let t = s.timings.map(|t| t.solve_seconds).unwrap_or(0.0);
        println!(
            "{:?}: residual {:.2e}, phi error {err:.2e}, condition {:?}, {t:.2} s",
            s.method, s.residual_norm, s.condition_estimate
        );
    }
    println!("cross-method distance {:.2e}", a.relative_distance(&b)?);
    let mut json = Vec::new();
    a.write_report_json(&mut json)?;
    println!("{}", String::from_utf8_lossy(&json));
    Ok(())
}
