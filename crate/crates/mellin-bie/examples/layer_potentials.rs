//! Single and double layer potentials on the real line, their jumps, and
//! the trace operators of the half-plane.

use mellin_bie::potential_theory::{double_layer, single_layer, trace_operators};

fn main() -> mellin_bie::Result<()> {
    let v = |t: f64| 1.0 / (1.0 + t * t);

    // half the Poisson extension (x2 + 1)/(x1² + (x2 + 1)²) of this density
    for x in [[0.0, 1.0], [1.0, 0.5], [-2.0, 2.0]] {
        let w = double_layer(&v, x)?;
        let exact = (x[1] + 1.0) / (x[0] * x[0] + (x[1] + 1.0) * (x[1] + 1.0)) / 2.0;
        println!("W v({:?}) = {w:.12}  closed form {exact:.12}", x);
    }

    // jump across the boundary: W v(t, ±h) → ±v(t)/2
    for h in [0.1, 0.01, 0.001] {
        let plus = double_layer(&v, [0.3, h])?;
        let minus = double_layer(&v, [0.3, -h])?;
        println!("h = {h:<6} W+ - W- = {:.8}  (v = {:.8})", plus - minus, v(0.3));
    }

    let s = single_layer(&v, [0.0, 1.0])?;
    println!(
        "V v(0, 1) = {:.10}, density mean {:.6}, grows like ln|x|: {}",
        s.value, s.mean, s.growth_warning
    );

    let tr = trace_operators(std::sync::Arc::new(v), &[0.0, 1.0, 3.0])?;
    for t in &tr {
        println!(
            "t = {}: V-1 v = {:.8} (¼ ln(1+t²) = {:.8}), V+1 v = {:.8}",
            t.t,
            t.v_minus1,
            0.25 * (1.0 + t.t * t.t).ln(),
            t.v_plus1
        );
    }
    Ok(())
}
