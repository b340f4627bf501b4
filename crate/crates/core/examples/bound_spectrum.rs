//! Discrete spectrum across the PT-symmetry breaking transition.

use ptscatter::scarf2::{self, PotentialParams};

fn main() {
    let p = PotentialParams::new(6.0, 0.0);
    let spectrum = scarf2::bound_spectrum(p);
    println!("{p}: {}", spectrum.phase);
    for level in &spectrum.levels {
        println!("  {} n={} E={}", level.branch, level.n, level.energy);
    }
    println!("  counting n = 0..[r±t] instead would list:");
    for level in scarf2::literal_integer_part_levels(p) {
        println!("    {} n={} E={}", level.branch, level.n, level.energy);
    }

    // Real levels merge and turn into conjugate pairs at V2 = V1 + 1/4.
    let v1 = 4.0;
    println!("\nV1 = {v1}, breaking at V2 = {}", v1 + 0.25);
    for v2 in [0.0, 2.0, 4.0, 4.2, 4.3, 6.0, 10.0] {
        let p = PotentialParams::new(v1, v2);
        let spectrum = scarf2::bound_spectrum(p);
        let energies: Vec<String> = spectrum
            .levels
            .iter()
            .map(|l| {
                if l.energy.im == 0.0 {
                    format!("{:.5}", l.energy.re)
                } else {
                    format!("{:.5}{:+.5}i", l.energy.re, l.energy.im)
                }
            })
            .collect();
        println!("  V2 = {v2:>5}: {:>10} [{}]", spectrum.phase.to_string(), energies.join(", "));
    }
}
