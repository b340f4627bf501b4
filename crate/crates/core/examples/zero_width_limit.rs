//! A resonance narrowing to zero width as V2 approaches the singular value.

use ptscatter::poles;

fn main() {
    for sign in [1.0, -1.0] {
        let deltas: Vec<f64> = (0..10).map(|j| sign * 0.4 * 0.5f64.powi(j)).collect();
        let trace = poles::width_vs_detuning(1.0, 1, &deltas).unwrap();
        println!("V1 = {}, n = {}, V2* = {}, E* = {}", trace.v1, trace.n, trace.v2_star, trace.e_star);
        println!("{:>12} {:>12} {:>30} {:>14}", "delta", "V2", "k_pole", "kind");
        for pt in &trace.points {
            println!(
                "{:>12.3e} {:>12.8} {:>30.14} {:>14}",
                pt.delta,
                pt.v2,
                pt.pole.k_pole,
                pt.pole.kind.to_string()
            );
        }
        println!(
            "{:>12} {:>12.8} {:>30.14} {:>14}  strictly narrowing: {}\n",
            0.0,
            trace.v2_star,
            trace.endpoint.k_pole,
            trace.endpoint.kind.to_string(),
            trace.widths_strictly_decreasing()
        );
    }
}
