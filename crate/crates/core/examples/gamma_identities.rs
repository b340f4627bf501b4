//! The complex Gamma kernel: values, identities and pole markers.

use std::f64::consts::PI;

use num_complex::Complex64;
use ptscatter::cgamma::{self, EvalOutcome};

fn main() {
    let points = [
        Complex64::new(0.5, 0.0),
        Complex64::new(3.7, 2.1),
        Complex64::new(-2.5, 0.3),
        Complex64::new(0.0, 1.0),
        Complex64::new(10.0, -4.0),
    ];
    println!("{:>22} {:>44} {:>10} {:>10}", "z", "Γ(z)", "recur", "reflect");
    for z in points {
        let gz = cgamma::gamma(z).finite().unwrap();
        let gz1 = cgamma::gamma(z + 1.0).finite().unwrap();
        let g1mz = cgamma::gamma(1.0 - z).finite().unwrap();
        let recur = (gz1 - z * gz).norm() / gz1.norm();
        let reflect = (gz * g1mz * cgamma::sin_pi(z) - PI).norm() / PI;
        println!("{z:>22.4} {gz:>44.15e} {recur:>10.1e} {reflect:>10.1e}");
    }

    // Poles are reported, not approximated by huge numbers.
    for n in 0..3 {
        let z = Complex64::new(-f64::from(n), 0.0);
        match cgamma::gamma(z) {
            EvalOutcome::Pole(m) => println!("Γ({z}) is a pole (index {m}), |1/Γ| = {}", cgamma::recip_gamma(z).norm()),
            EvalOutcome::Finite(v) => println!("Γ({z}) = {v}"),
        }
    }

    // lnΓ stays finite where Γ itself overflows.
    let big = Complex64::new(200.0, 30.0);
    println!("lnΓ({big}) = {}", cgamma::log_gamma(big).unwrap());

    for y in [0.1, 1.0, 5.0] {
        let g = cgamma::gamma(Complex64::new(0.0, y)).finite().unwrap();
        println!("|Γ(i{y})|² y sinh(πy) / π = {:.15}", g.norm_sqr() * y * (PI * y).sinh() / PI);
    }
}
