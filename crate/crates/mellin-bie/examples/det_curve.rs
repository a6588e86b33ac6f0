//! Determinant of the system symbol along the rectangle contour.

use mellin_bie::fredholm_analysis::{ellipticity_refined, ELLIPTICITY_TOL};
use mellin_bie::symbol_calculus::{sample_det_curve, Closure, DetSource, RectanglePath, SpaceParams};

fn main() -> mellin_bie::Result<()> {
    let path = RectanglePath::new(1025)?;
    for (p, r) in [(2.0, -0.5), (1.5, 0.3), (2.0, 1.0)] {
        let source = DetSource::System {
            params: SpaceParams::new(p, r)?,
            closure: Closure::Localized,
        };
        let curve = sample_det_curve(&source, &path)?;
        let (min, at) = curve.min_abs();
        let rep = ellipticity_refined(&source, &path, ELLIPTICITY_TOL)?;
        println!(
            "p = {p}, r = {r:>4}: min |det| = {min:.3e} at {at}, refined {:.3e}, elliptic = {}",
            rep.min_abs_det, rep.elliptic
        );
    }

    let out = std::env::temp_dir().join("det_curve_p2_r-0.5.csv");
    let source = DetSource::System {
        params: SpaceParams::new(2.0, -0.5)?,
        closure: Closure::Localized,
    };
    sample_det_curve(&source, &path)?.write_csv(std::fs::File::create(&out)?)?;
    println!("curve written to {}", out.display());
    Ok(())
}
