//! Left and right incidence on a complex potential: T agrees, R does not.

use ptscatter::scarf2::PotentialParams;
use ptscatter::scatter::{self, DomainConfig, Side};

fn main() {
    let p = PotentialParams::new(1.0, 2.0);
    let cfg = DomainConfig::for_potential(&p);
    println!("{p}");
    println!("{:>5} {:>14} {:>14} {:>14} {:>14} {:>14}", "k", "T", "R_L", "R_R", "R_R(-V2)", "1-T-R_L");
    for i in 1..=12 {
        let k = 0.25 * f64::from(i);
        let left = scatter::solve_scattering(&p, k, Side::LeftIncidence, &cfg).unwrap();
        let right = scatter::solve_scattering(&p, k, Side::RightIncidence, &cfg).unwrap();
        let flipped = scatter::solve_scattering(&p.flipped(), k, Side::RightIncidence, &cfg).unwrap();
        assert!((left.t_amp - right.t_amp).norm() < 1e-8 * left.t_amp.norm());
        println!(
            "{k:>5.2} {:>14.8} {:>14.8} {:>14.8} {:>14.8} {:>14.6e}",
            left.transmission, left.reflection, right.reflection, flipped.reflection, left.flux_defect
        );
    }
}
