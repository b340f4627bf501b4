//! Spectral singularities: solve for V2, then watch T blow up at E*.

use num_complex::Complex64;
use ptscatter::scarf2::{self, PotentialParams};
use ptscatter::scatter::{self, DomainConfig, Side};

fn main() {
    for (v1, n) in [(1.0, 1), (2.0, 2), (-1.0, 1), (5.0, 1)] {
        let (v2, e_star) = match scarf2::singularity_solve_v2(v1, n) {
            Ok(pair) => pair,
            Err(err) => {
                println!("V1 = {v1}, n = {n}: {err}");
                continue;
            }
        };
        let p = PotentialParams::new(v1, v2);
        let report = scarf2::singularity_check(p, scarf2::DEFAULT_SINGULARITY_TOL);
        println!("V1 = {v1}, n = {n}: V2 = {v2}, E* = {e_star}, check {report:?}");

        let k_star = e_star.sqrt();
        let at_pole = scarf2::transmission_amplitude(p, Complex64::new(k_star, 0.0)).unwrap();
        println!("  analytic t at k* = {k_star:.12}: pole = {}", at_pole.is_pole());

        let cfg = DomainConfig::for_potential(&p);
        for de in [-0.1, -0.01, -1e-4, 0.0, 1e-4, 0.01, 0.1] {
            let k = (e_star + de).sqrt();
            let t = scatter::solve_scattering(&p, k, Side::LeftIncidence, &cfg).unwrap();
            println!("  E* {de:+.0e}: T = {:.6e}  R_L = {:.6e}", t.transmission, t.reflection);
        }
    }
}
