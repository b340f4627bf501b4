//! |ψ(x)| for left incidence at, and just off, a spectral singularity.
//! At E* the scattering state is dominated by the outgoing solution and
//! its amplitude inside the well is enormous.

use ptscatter::scarf2::{self, PotentialParams};
use ptscatter::scatter::{self, DomainConfig, Side};

fn main() {
    let (v2, e_star) = scarf2::singularity_solve_v2(1.0, 1).unwrap();
    let p = PotentialParams::new(1.0, v2);
    let cfg = DomainConfig::for_potential(&p);
    let xs: Vec<f64> = (0..=24).map(|i| -6.0 + 0.5 * f64::from(i)).collect();

    let energies = [e_star - 0.1, e_star - 1e-3, e_star, e_star + 0.1];
    let columns: Vec<Vec<f64>> = energies
        .iter()
        .map(|e| {
            scatter::wavefunction_export(&p, e.sqrt(), Side::LeftIncidence, &cfg, &xs)
                .unwrap()
                .into_iter()
                .map(|(_, psi)| psi.norm())
                .collect()
        })
        .collect();

    print!("{:>6}", "x");
    for e in energies {
        print!(" {:>14}", format!("E={e:.4}"));
    }
    println!();
    for (i, x) in xs.iter().enumerate() {
        print!("{x:>6.1}");
        for col in &columns {
            print!(" {:>14.6e}", col[i]);
        }
        println!();
    }
}
