//! Fredholm region over `(p, r)`, printed as a character map.

use mellin_bie::fredholm_analysis::{scan_region, ScanOptions, Verdict};

fn main() -> mellin_bie::Result<()> {
    let p: Vec<f64> = (0..=12).map(|k| 1.5 + 0.125 * k as f64).collect();
    let r: Vec<f64> = (0..=24).map(|k| -1.0 + 0.125 * k as f64).collect();
    let map = scan_region(&p, &r, &ScanOptions::default())?;

    println!("rows r (top = 2), columns p from 1.5 to 3.0");
    println!("U uniquely solvable, F Fredholm, X not Fredholm");
    for j in (0..r.len()).rev() {
        let row: String = (0..p.len())
            .map(|i| match map.get(i, j).verdict {
                Verdict::UniquelySolvable => 'U',
                Verdict::Fredholm => 'F',
                Verdict::NotFredholm => 'X',
            })
            .collect();
        println!("{:>6.3}  {row}", r[j]);
    }
    let c = map.counts();
    println!(
        "counts: {} U, {} F, {} X",
        c.uniquely_solvable, c.fredholm, c.not_fredholm
    );
    Ok(())
}
