//! Poles of t(k) in the complex k-plane: bound states, antibound states,
//! resonances and spectral singularities.

use ptscatter::poles::{self, Region};
use ptscatter::scarf2::PotentialParams;

fn main() {
    let cases = [
        (PotentialParams::new(6.0, 0.0), Region::new((-1.0, 1.0), (0.2, 3.0))),
        (PotentialParams::new(6.0, 2.0), Region::new((-1.0, 1.0), (0.2, 3.0))),
        (PotentialParams::new(6.0, 2.0), Region::new((-1.0, 1.0), (-3.0, -0.2))),
        (PotentialParams::new(1.0, 5.0), Region::new((0.05, 3.0), (-3.0, 1.0))),
        (PotentialParams::new(1.0, 7.75), Region::new((0.05, 3.0), (-2.0, 1.0))),
        (PotentialParams::new(1.0, 7.6), Region::new((0.05, 3.0), (-2.0, 1.0))),
    ];
    for (p, region) in cases {
        let scan = poles::scan_poles(p, region, 16).unwrap();
        println!(
            "{p}: {} pole(s) from {} seeds ({} failed, {} left the region)",
            scan.poles.len(),
            scan.seeds,
            scan.failed,
            scan.outside
        );
        for rec in &scan.poles {
            println!(
                "  k = {:>26.12}  E = {:>30.10}  {:<22} |1/t| = {:.1e}",
                rec.k_pole, rec.energy, rec.kind.to_string(), rec.residual
            );
        }
    }
}
