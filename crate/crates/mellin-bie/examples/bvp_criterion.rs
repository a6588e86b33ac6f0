//! Fredholm and unique-solvability verdicts of the mixed problem in terms of
//! the integrability exponent `p` and the smoothness `s` of the solution.

use mellin_bie::fredholm_analysis::bvp_criterion;

fn main() {
    let s: Vec<f64> = (1..=12).map(|k| 0.25 * k as f64).collect();
    print!("{:>6}", "s");
    for p in [1.5, 2.0, 3.0] {
        print!("{:>18}", format!("p = {p}"));
    }
    println!();
    for &sv in &s {
        print!("{sv:>6.2}");
        for p in [1.5, 2.0, 3.0] {
            let v = match bvp_criterion(p, sv) {
                Ok(v) => v.name().to_string(),
                Err(_) => "no trace".to_string(),
            };
            print!("{v:>18}");
        }
        println!();
    }
}
