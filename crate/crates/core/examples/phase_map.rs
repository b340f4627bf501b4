//! Character map of the (V1, V2) plane: PT phase plus the spectral
//! singularity curves V1 + |V2| = 4n² + 4n + 3/4 where E* > 0.

use ptscatter::scarf2::{self, PotentialParams, PtPhase};

fn main() {
    let (nv1, nv2) = (72, 30);
    let tol = 0.12;
    println!("V2 from 30 (top) to 0; V1 from -4 (left) to 20. '.' unbroken, '~' broken, '#' singular");
    for j in (0..nv2).rev() {
        let v2 = 30.0 * f64::from(j) / f64::from(nv2 - 1);
        let row: String = (0..nv1)
            .map(|i| {
                let v1 = -4.0 + 24.0 * f64::from(i) / f64::from(nv1 - 1);
                let p = PotentialParams::new(v1, v2);
                if scarf2::singularity_check(p, tol).satisfied {
                    '#'
                } else {
                    match scarf2::pt_phase(p) {
                        PtPhase::Unbroken => '.',
                        PtPhase::Broken => '~',
                        PtPhase::SingularBoundary => '|',
                    }
                }
            })
            .collect();
        println!("{v2:>5.1} {row}");
    }
}
