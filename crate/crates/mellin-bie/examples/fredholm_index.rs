//! Winding numbers and operator indices of the system symbol and of a
//! composite operator `I + d K¹_c`.

use mellin_bie::fredholm_analysis::{local_invertibility_at_zero, winding_refined};
use mellin_bie::symbol_calculus::{Closure, DetSource, SpaceParams, SymbolSpec};
use num_complex::Complex64 as C;

fn main() -> mellin_bie::Result<()> {
    println!("system symbol");
    for p in [1.5, 2.0, 3.0] {
        for r in [-0.75, -0.5, -0.25] {
            let source = DetSource::System {
                params: SpaceParams::new(p, r)?,
                closure: Closure::Localized,
            };
            let local = local_invertibility_at_zero(&source)?;
            match winding_refined(&source, 257) {
                Ok(ix) => println!(
                    "  p = {p}, r = {r:>5}: winding {:>2}, index {:>2}, min |det| on Gamma1 {:.3}",
                    ix.winding_number, ix.operator_index, local.min_abs_det
                ),
                Err(e) => println!("  p = {p}, r = {r:>5}: {e}"),
            }
        }
    }

    println!("I + d K1_-1 at p = 2, r = -0.25");
    for d in [0.5, 1.0, 2.0] {
        let spec = SymbolSpec::new(
            C::new(1.0, 0.0),
            vec![(C::new(d, 0.0), C::new(-1.0, 0.0))],
            SpaceParams::new(2.0, -0.25)?,
        )?;
        let ix = winding_refined(&DetSource::Composite(spec), 257)?;
        println!("  d = {d}: winding {}, index {}", ix.winding_number, ix.operator_index);
    }
    Ok(())
}
