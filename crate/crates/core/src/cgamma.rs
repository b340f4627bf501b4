//! Complex Gamma function kernel.
//!
//! `gamma` and `recip_gamma` use a Lanczos rational approximation (g = 7,
//! nine coefficients) in the half plane `Re z >= 1/2` and the reflection
//! formula elsewhere. `log_gamma` is computed by an independent route: the
//! Stirling series after shifting the argument to `Re z >= 15`, so the two
//! can be checked against each other.
//!
//! Poles are data, not failures: evaluating on a non-positive integer yields
//! [`EvalOutcome::Pole`].

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

/// Absolute distance to a non-positive integer below which an argument is
/// treated as sitting on a pole.
pub const POLE_TOL: f64 = 1e-12;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Result of evaluating a meromorphic function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EvalOutcome {
    Finite(Complex64),
    /// Pole at `-n` (for Gamma) or pole originating from a Gamma factor whose
    /// argument sits on `-n`.
    Pole(u64),
}

impl EvalOutcome {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            EvalOutcome::Finite(v) => Some(v),
            EvalOutcome::Pole(_) => None,
        }
    }

    pub fn is_pole(&self) -> bool {
        matches!(self, EvalOutcome::Pole(_))
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GammaError {
    #[error("log Gamma is undefined at the pole z = -{0}")]
    Pole(u64),
}

/// Coefficients of a Lanczos approximation
/// `Γ(z+1) = √(2π) (z+g+½)^(z+½) e^-(z+g+½) [c0 + Σ c_i/(z+i)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Lanczos {
    pub g: f64,
    pub coeffs: Vec<f64>,
}

impl Default for Lanczos {
    fn default() -> Self {
        Self {
            g: 7.0,
            coeffs: LANCZOS_G7.to_vec(),
        }
    }
}

// Godfrey's g = 7, n = 9 set.
#[allow(clippy::excessive_precision)]
const LANCZOS_G7: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

impl Lanczos {
    /// Γ(z) with this coefficient set.
    pub fn gamma(&self, z: Complex64) -> EvalOutcome {
        if let Some(n) = pole_index(z) {
            return EvalOutcome::Pole(n);
        }
        if z.re < 0.5 {
            // Γ(z) = π / (sin(πz) Γ(1-z))
            let denom = sin_pi(z) * self.gamma_right(Complex64::new(1.0, 0.0) - z);
            EvalOutcome::Finite(Complex64::new(PI, 0.0) / denom)
        } else {
            EvalOutcome::Finite(self.gamma_right(z))
        }
    }

    /// 1/Γ(z), an entire function; exactly zero on the non-positive integers.
    pub fn recip_gamma(&self, z: Complex64) -> Complex64 {
        if z.re < 0.5 {
            // 1/Γ(z) = sin(πz) Γ(1-z) / π
            sin_pi(z) * self.gamma_right(Complex64::new(1.0, 0.0) - z) / PI
        } else {
            self.gamma_right(z).inv()
        }
    }

    fn gamma_right(&self, z: Complex64) -> Complex64 {
        let zm1 = z - 1.0;
        let mut sum = Complex64::new(self.coeffs[0], 0.0);
        for (i, &c) in self.coeffs.iter().enumerate().skip(1) {
            sum += c / (zm1 + i as f64);
        }
        let t = zm1 + self.g + 0.5;
        let log_pow = (zm1 + 0.5) * t.ln() - t;
        (log_pow + HALF_LN_2PI).exp() * sum
    }
}

/// Γ(z) with the default Lanczos kernel.
pub fn gamma(z: Complex64) -> EvalOutcome {
    Lanczos::default().gamma(z)
}

/// 1/Γ(z) with the default Lanczos kernel.
pub fn recip_gamma(z: Complex64) -> Complex64 {
    Lanczos::default().recip_gamma(z)
}

/// Principal branch of log Γ(z): analytic on the plane cut along the
/// negative real axis and satisfying `lnΓ(z+1) = ln z + lnΓ(z)` with the
/// principal `ln`.
pub fn log_gamma(z: Complex64) -> Result<Complex64, GammaError> {
    if let Some(n) = pole_index(z) {
        return Err(GammaError::Pole(n));
    }
    const SHIFT_TO: f64 = 15.0;
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < SHIFT_TO {
        shift += w.ln();
        w += 1.0;
    }
    Ok(stirling(w) - shift)
}

// Stirling series for lnΓ(w), accurate to ~1e-17 for |w| >= 15, Re w > 0.
fn stirling(w: Complex64) -> Complex64 {
    // B_{2j} / (2j (2j-1)), j = 1..8
    const TERMS: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
        -3617.0 / 122_400.0,
    ];
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in TERMS {
        series += pow * c;
        pow *= inv2;
    }
    (w - 0.5) * w.ln() - w + HALF_LN_2PI + series
}

/// Returns `Some(n)` when `z` lies within [`POLE_TOL`] of `-n`, `n >= 0`.
pub fn pole_index(z: Complex64) -> Option<u64> {
    if z.re > 0.5 {
        return None;
    }
    let nearest = z.re.round();
    let dist = Complex64::new(z.re - nearest, z.im).norm();
    (dist <= POLE_TOL).then(|| (-nearest) as u64)
}

/// sin(πx) with exact argument reduction.
pub fn sin_pi_real(x: f64) -> f64 {
    let n = x.round();
    let f = x - n;
    let s = (PI * f).sin();
    if n.rem_euclid(2.0) == 0.0 {
        s
    } else {
        -s
    }
}

/// cos(πx) with exact argument reduction.
pub fn cos_pi_real(x: f64) -> f64 {
    let n = x.round();
    let f = x - n;
    let c = (PI * f).cos();
    if n.rem_euclid(2.0) == 0.0 {
        c
    } else {
        -c
    }
}

/// sin(πz) for complex z, exact zeros on the integers.
pub fn sin_pi(z: Complex64) -> Complex64 {
    let y = PI * z.im;
    Complex64::new(sin_pi_real(z.re) * y.cosh(), cos_pi_real(z.re) * y.sinh())
}
