//! The numerical solver accepts any decaying potential. Here: a complex
//! Gaussian, V(x) = -(3 + 1.5 i x) e^{-x²}, which is PT-symmetric but not
//! exactly solvable.

use num_complex::Complex64;
use ptscatter::scatter::{self, DomainConfig, FnPotential, Side};

fn main() {
    let gaussian = FnPotential::new(|x: f64| -Complex64::new(3.0, 1.5 * x) * (-x * x).exp(), 7.0);
    let cfg = DomainConfig::for_potential(&gaussian);
    println!("{:>5} {:>14} {:>14} {:>14}", "k", "T", "R_L", "R_R");
    for i in 1..=10 {
        let k = 0.3 * f64::from(i);
        let left = scatter::solve_scattering(&gaussian, k, Side::LeftIncidence, &cfg).unwrap();
        let right = scatter::solve_scattering(&gaussian, k, Side::RightIncidence, &cfg).unwrap();
        println!("{k:>5.2} {:>14.8} {:>14.8} {:>14.8}", left.transmission, left.reflection, right.reflection);
    }
}
