//! Closed-form transmission against the numerical scattering solver.
//!
//! `cargo run --example transmission_sweep -- 1 5` picks (V1, V2).

use ptscatter::scarf2::{self, PotentialParams};
use ptscatter::scatter::{self, DomainConfig, Side};

fn main() {
    let args: Vec<f64> = std::env::args().skip(1).map(|a| a.parse().expect("number")).collect();
    let (v1, v2) = match args[..] {
        [a, b] => (a, b),
        _ => (6.0, 2.0),
    };
    let p = PotentialParams::new(v1, v2);
    let cfg = DomainConfig::for_potential(&p);
    let ks: Vec<f64> = (1..=25).map(|i| 0.16 * f64::from(i)).collect();
    let numeric = scatter::sweep(&p, &ks, Side::LeftIncidence, &cfg).unwrap();

    println!("{p}, L = {:.2}, phase {}", cfg.half_width, scarf2::pt_phase(p));
    println!("{:>6} {:>20} {:>20} {:>10}", "k", "T analytic", "T numeric", "rel diff");
    for (k, res) in ks.iter().zip(numeric) {
        let t_an = scarf2::transmission_coefficient(p, *k).unwrap();
        match res {
            Ok(r) => println!(
                "{k:>6.2} {t_an:>20.12} {:>20.12} {:>10.1e}",
                r.transmission,
                ((r.transmission - t_an) / t_an).abs()
            ),
            Err(e) => println!("{k:>6.2} {t_an:>20.12} failed: {e}"),
        }
    }
}
