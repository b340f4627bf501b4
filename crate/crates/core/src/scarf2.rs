//! Closed-form physics of the complex PT-symmetric Scarf II potential
//!
//! ```text
//! V(x) = -V1 sech²x + i V2 sech x tanh x        (units 2m = ħ = 1)
//! ```
//!
//! with derived parameters `r = ½√(V2+V1+¼)`, `s = ½√(V2-V1-¼)`,
//! `t = ½√(¼+V1-V2)` and the Gamma-quotient transmission amplitude
//!
//! ```text
//!         Γ(½-r-i(s+k)) Γ(½+r+i(s-k)) Γ(½+r-i(s+k)) Γ(½-r+i(s-k))
//! t(k) = ---------------------------------------------------------
//!                     Γ(-ik) Γ(1-ik) Γ²(½-ik)
//! ```
//!
//! A spectral singularity (zero-width resonance) appears when
//! `V1 + |V2| = 4n² + 4n + ¾` for an integer `n >= 1`, at the real energy
//! `E* = ¼(|V2| - ¼ - V1)`, provided that energy is positive.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::cgamma::{self, EvalOutcome};

/// Equality tolerance for the PT-phase boundary `|V2| = V1 + ¼`.
pub const PHASE_BOUNDARY_TOL: f64 = 1e-12;

/// Default tolerance on the residual `V1 + |V2| - (4n²+4n+¾)`.
pub const DEFAULT_SINGULARITY_TOL: f64 = 1e-9;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalyticError {
    #[error("k = 0 is the scattering threshold; the amplitude is not evaluated there")]
    Threshold,
    #[error("a denominator Gamma factor sits on a pole at k = {0}")]
    DenominatorPole(Complex64),
    #[error(
        "no spectral singularity for v1 = {v1}, n = {n}: v2 = {v2} gives E* = {e_star} <= 0 \
         (|V2| > |V1| + sgn(V1)/4 is {abstract_ok})"
    )]
    Positivity {
        v1: f64,
        n: u32,
        v2: f64,
        e_star: f64,
        abstract_ok: bool,
    },
    #[error("level index must be >= 1, got {0}")]
    LevelIndex(u32),
}

/// Strengths `(V1, V2)` of the real and imaginary parts of the potential.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PotentialParams {
    pub v1: f64,
    pub v2: f64,
}

impl PotentialParams {
    pub fn new(v1: f64, v2: f64) -> Self {
        Self { v1, v2 }
    }

    /// Same real part, imaginary part of opposite sign. Equivalent to
    /// reversing the direction of incidence.
    pub fn flipped(self) -> Self {
        Self::new(self.v1, -self.v2)
    }

    pub fn potential_value(&self, x: f64) -> Complex64 {
        potential_value(*self, x)
    }
}

impl fmt::Display for PotentialParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(v1 = {}, v2 = {})", self.v1, self.v2)
    }
}

/// Dimensionless parameters `r`, `s`, `t`, each a principal square root.
///
/// `t = ±i·s`: the sign is `+` when `s` is real and `-` when `s` is
/// imaginary, since both are principal roots of opposite radicands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams {
    pub r: Complex64,
    pub s: Complex64,
    pub t: Complex64,
}

pub fn potential_value(p: PotentialParams, x: f64) -> Complex64 {
    let sech = x.cosh().recip();
    let tanh = x.tanh();
    Complex64::new(-p.v1 * sech * sech, p.v2 * sech * tanh)
}

fn half_sqrt(radicand: f64) -> Complex64 {
    Complex64::new(radicand, 0.0).sqrt() * 0.5
}

pub fn derive_params(p: PotentialParams) -> DerivedParams {
    DerivedParams {
        r: half_sqrt(p.v2 + p.v1 + 0.25),
        s: half_sqrt(p.v2 - p.v1 - 0.25),
        t: half_sqrt(0.25 + p.v1 - p.v2),
    }
}

/// Gamma arguments of the numerator and denominator of t(k).
fn gamma_arguments(p: PotentialParams, k: Complex64) -> ([Complex64; 4], [Complex64; 4]) {
    let DerivedParams { r, s, .. } = derive_params(p);
    let half = Complex64::new(0.5, 0.0);
    let num = [
        half - r - I * (s + k),
        half + r + I * (s - k),
        half + r - I * (s + k),
        half - r + I * (s - k),
    ];
    let den = [-I * k, 1.0 - I * k, half - I * k, half - I * k];
    (num, den)
}

/// The Gamma-quotient transmission amplitude.
///
/// Evaluated in log space. A pole-marker is returned when more numerator
/// factors than denominator factors sit on Gamma poles; a numerator pole
/// cancelled by a denominator pole is a removable singularity and is
/// evaluated as the symmetric average of two nearby points.
pub fn transmission_amplitude(
    p: PotentialParams,
    k: Complex64,
) -> Result<EvalOutcome, AnalyticError> {
    if k.norm() == 0.0 {
        return Err(AnalyticError::Threshold);
    }
    let (num, den) = gamma_arguments(p, k);
    let num_poles: Vec<u64> = num.iter().filter_map(|&z| cgamma::pole_index(z)).collect();
    let den_poles = den.iter().filter(|&&z| cgamma::pole_index(z).is_some()).count();

    if num_poles.len() > den_poles {
        return Ok(EvalOutcome::Pole(num_poles[0]));
    }
    if num_poles.len() < den_poles {
        return Ok(EvalOutcome::Finite(Complex64::new(0.0, 0.0)));
    }
    if den_poles > 0 {
        let h = 1e-6 * k.norm().max(1.0);
        let a = log_quotient(p, k + h);
        let b = log_quotient(p, k - h);
        return Ok(EvalOutcome::Finite((a.exp() + b.exp()) * 0.5));
    }
    Ok(EvalOutcome::Finite(log_quotient(p, k).exp()))
}

fn log_quotient(p: PotentialParams, k: Complex64) -> Complex64 {
    let (num, den) = gamma_arguments(p, k);
    let lg = |z: Complex64| cgamma::log_gamma(z).expect("argument checked off the pole set");
    num.iter().map(|&z| lg(z)).sum::<Complex64>() - den.iter().map(|&z| lg(z)).sum::<Complex64>()
}

/// The amplitude exactly as printed in the source derivation, with `Γ(1+ik)`
/// in the denominator instead of `Γ(1-ik)`.
///
/// On the real k-axis `|Γ(1+ik)| = |Γ(1-ik)|`, so the modulus agrees with
/// [`transmission_amplitude`]; only the phase differs. Off the real axis the
/// `Γ(1+ik)` poles at `k = i, 2i, …` cancel bound-state poles, which is why
/// the `Γ(1-ik)` form is the one used everywhere else.
pub fn transmission_amplitude_as_printed(
    p: PotentialParams,
    k: f64,
) -> Result<EvalOutcome, AnalyticError> {
    let kc = Complex64::new(k, 0.0);
    let base = transmission_amplitude(p, kc)?;
    Ok(match base {
        EvalOutcome::Finite(t) => {
            let phase = cgamma::gamma(1.0 - I * kc).finite().unwrap()
                * cgamma::recip_gamma(1.0 + I * kc);
            EvalOutcome::Finite(t * phase)
        }
        pole => pole,
    })
}

/// `1/t(k)` as a product of entire reciprocal-Gamma factors and the finite
/// denominator Gammas. Zeros of this function are the poles of t.
pub fn inverse_transmission(p: PotentialParams, k: Complex64) -> Result<Complex64, AnalyticError> {
    if k.norm() == 0.0 {
        return Err(AnalyticError::Threshold);
    }
    let (num, den) = gamma_arguments(p, k);
    let mut acc = Complex64::new(1.0, 0.0);
    for z in den {
        match cgamma::gamma(z) {
            EvalOutcome::Finite(g) => acc *= g,
            EvalOutcome::Pole(_) => return Err(AnalyticError::DenominatorPole(k)),
        }
    }
    for z in num {
        acc *= cgamma::recip_gamma(z);
    }
    Ok(acc)
}

/// `|t(k)|²` for real `k > 0`; `f64::INFINITY` on a pole.
pub fn transmission_coefficient(p: PotentialParams, k: f64) -> Result<f64, AnalyticError> {
    if k <= 0.0 {
        return Err(AnalyticError::Threshold);
    }
    Ok(match transmission_amplitude(p, Complex64::new(k, 0.0))? {
        EvalOutcome::Finite(t) => t.norm_sqr(),
        EvalOutcome::Pole(_) => f64::INFINITY,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum PtPhase {
    Unbroken,
    Broken,
    SingularBoundary,
}

impl fmt::Display for PtPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PtPhase::Unbroken => "UNBROKEN",
            PtPhase::Broken => "BROKEN",
            PtPhase::SingularBoundary => "SINGULAR-BOUNDARY",
        })
    }
}

/// Real spectrum iff `|V2| < V1 + ¼`.
pub fn pt_phase(p: PotentialParams) -> PtPhase {
    let gap = p.v1 + 0.25 - p.v2.abs();
    if gap.abs() <= PHASE_BOUNDARY_TOL {
        PtPhase::SingularBoundary
    } else if gap > 0.0 {
        PtPhase::Unbroken
    } else {
        PtPhase::Broken
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Branch {
    Plus,
    Minus,
    ConjugatePair,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Plus => "PLUS",
            Branch::Minus => "MINUS",
            Branch::ConjugatePair => "CONJUGATE-PAIR",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub branch: Branch,
    pub n: u32,
    pub energy: Complex64,
}

impl Level {
    /// Pole of t(k) carrying this level, in the upper half k-plane.
    pub fn k_pole(&self) -> Complex64 {
        let k = self.energy.sqrt();
        if k.im < 0.0 {
            -k
        } else {
            k
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub phase: PtPhase,
    pub levels: Vec<Level>,
}

impl SpectrumReport {
    pub fn energies(&self, branch: Branch) -> Vec<Complex64> {
        self.levels
            .iter()
            .filter(|l| l.branch == branch)
            .map(|l| l.energy)
            .collect()
    }
}

/// Discrete spectrum from the pole set of t(k).
///
/// Unbroken phase: `E = -(r±t - n - ½)²` for every `n >= 0` with
/// `n + ½ - (r±t) < 0` strictly. Broken phase: `E = -(n + ½ - (r ± is))²`
/// for `n + ½ < Re r`, each `n` giving a complex-conjugate pair.
/// `|V2|` is used throughout since the pole set is invariant under
/// `V2 → -V2`.
pub fn bound_spectrum(p: PotentialParams) -> SpectrumReport {
    let phase = pt_phase(p);
    let canonical = PotentialParams::new(p.v1, p.v2.abs());
    let d = derive_params(canonical);
    let mut levels = Vec::new();

    match phase {
        PtPhase::Unbroken | PtPhase::SingularBoundary => {
            // s is imaginary (or zero) here, so r and t are real.
            let r = d.r.re;
            let t = if phase == PtPhase::SingularBoundary { 0.0 } else { d.t.re };
            for (branch, depth) in [(Branch::Plus, r + t), (Branch::Minus, r - t)] {
                let mut n = 0u32;
                while f64::from(n) + 0.5 - depth < 0.0 {
                    let kappa = depth - f64::from(n) - 0.5;
                    levels.push(Level {
                        branch,
                        n,
                        energy: Complex64::new(-kappa * kappa, 0.0),
                    });
                    n += 1;
                }
            }
        }
        PtPhase::Broken => {
            let mut n = 0u32;
            while f64::from(n) + 0.5 < d.r.re {
                for sign in [1.0, -1.0] {
                    let w = f64::from(n) + 0.5 - (d.r + I * d.s * sign);
                    levels.push(Level {
                        branch: Branch::ConjugatePair,
                        n,
                        energy: -(w * w),
                    });
                }
                n += 1;
            }
        }
    }
    levels.sort_by(|a, b| {
        a.energy
            .re
            .total_cmp(&b.energy.re)
            .then(a.energy.im.total_cmp(&b.energy.im))
    });
    SpectrumReport { phase, levels }
}

/// Levels counted literally as `n = 0, 1, …, [r ± t]` (integer part),
/// without the strict binding requirement. Only meaningful in the unbroken
/// phase; returns an empty list otherwise. Kept for comparison with
/// [`bound_spectrum`]: it admits a threshold level at `E = 0` and, for small
/// `r - t`, a level that is not a pole in the upper half plane.
pub fn literal_integer_part_levels(p: PotentialParams) -> Vec<Level> {
    if pt_phase(p) != PtPhase::Unbroken {
        return Vec::new();
    }
    let d = derive_params(PotentialParams::new(p.v1, p.v2.abs()));
    let (r, t) = (d.r.re, d.t.re);
    let mut levels = Vec::new();
    for (branch, depth) in [(Branch::Plus, r + t), (Branch::Minus, r - t)] {
        if depth < 0.0 {
            continue;
        }
        let m = depth.floor() as u32;
        for n in 0..=m {
            let w = f64::from(n) + 0.5 - depth;
            levels.push(Level {
                branch,
                n,
                energy: Complex64::new(-w * w, 0.0),
            });
        }
    }
    levels
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingularityReport {
    pub satisfied: bool,
    /// Level index minimizing the residual; `None` only when no `n >= 1`
    /// can be assigned (non-finite input).
    pub n: Option<u32>,
    pub e_star: Option<f64>,
    /// `V1 + |V2| - (4n² + 4n + ¾)` for the reported `n`.
    pub detuning: f64,
    /// `E* > 0`.
    pub positivity_ok: bool,
    /// `|V2| > |V1| + sgn(V1)/4`, the positivity inequality in its
    /// sign-function form. Differs from `positivity_ok` when `V1 < 0`.
    pub abstract_positivity_ok: bool,
}

/// `4n² + 4n + ¾`.
pub fn singular_sum(n: u32) -> f64 {
    let n = f64::from(n);
    4.0 * n * n + 4.0 * n + 0.75
}

/// `E* = ¼(|V2| - ¼ - V1)`.
pub fn singular_energy(p: PotentialParams) -> f64 {
    0.25 * (p.v2.abs() - 0.25 - p.v1)
}

fn abstract_positivity(p: PotentialParams) -> bool {
    let sgn = if p.v1 > 0.0 {
        1.0
    } else if p.v1 < 0.0 {
        -1.0
    } else {
        0.0
    };
    p.v2.abs() > p.v1.abs() + sgn / 4.0
}

/// Nearest `n >= 1` for the sum `V1 + |V2|`.
pub fn nearest_level(sum: f64) -> Option<u32> {
    if !sum.is_finite() {
        return None;
    }
    // 4n² + 4n + ¾ = (2n+1)² - ¼
    let cont = ((sum + 0.25).max(0.0).sqrt() - 1.0) / 2.0;
    let lo = cont.floor().max(1.0) as u32;
    let best = [lo, lo + 1]
        .into_iter()
        .min_by(|&a, &b| {
            (sum - singular_sum(a))
                .abs()
                .total_cmp(&(sum - singular_sum(b)).abs())
        })
        .unwrap();
    Some(best)
}

pub fn singularity_check(p: PotentialParams, tol: f64) -> SingularityReport {
    let sum = p.v1 + p.v2.abs();
    let e_star = singular_energy(p);
    let positivity_ok = e_star > 0.0;
    let abstract_positivity_ok = abstract_positivity(p);
    match nearest_level(sum) {
        Some(n) => {
            let detuning = sum - singular_sum(n);
            SingularityReport {
                satisfied: detuning.abs() <= tol && positivity_ok,
                n: Some(n),
                e_star: Some(e_star),
                detuning,
                positivity_ok,
                abstract_positivity_ok,
            }
        }
        None => SingularityReport {
            satisfied: false,
            n: None,
            e_star: e_star.is_finite().then_some(e_star),
            detuning: f64::NAN,
            positivity_ok,
            abstract_positivity_ok,
        },
    }
}

/// The non-negative `V2` placing a spectral singularity at level `n` for the
/// given `V1`, together with its energy `E*`.
pub fn singularity_solve_v2(v1: f64, n: u32) -> Result<(f64, f64), AnalyticError> {
    if n < 1 {
        return Err(AnalyticError::LevelIndex(n));
    }
    let v2 = singular_sum(n) - v1;
    let p = PotentialParams::new(v1, v2);
    let e_star = singular_energy(p);
    if !(e_star > 0.0) || v2 < 0.0 {
        return Err(AnalyticError::Positivity {
            v1,
            n,
            v2,
            e_star,
            abstract_ok: abstract_positivity(p),
        });
    }
    Ok((v2, e_star))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn p(v1: f64, v2: f64) -> PotentialParams {
        PotentialParams::new(v1, v2)
    }

    /// Transmission through the real well `-λ(λ+1) sech²x`, written directly
    /// from the textbook hypergeometric solution:
    /// `T = sinh²(πk) / (sinh²(πk) + cos²(π√(λ(λ+1)+¼)))`.
    fn sech2_well_t(depth: f64, k: f64) -> f64 {
        let sh = (std::f64::consts::PI * k).sinh().powi(2);
        let c = (std::f64::consts::PI * (depth + 0.25).sqrt()).cos().powi(2);
        sh / (sh + c)
    }

    #[test]
    fn potential_values() {
        assert_eq!(potential_value(p(1.0, 7.75), 0.0), Complex64::new(-1.0, 0.0));
        for x in [30.0, -30.0] {
            // sech·tanh decays like e^-|x|, sech² like e^-2|x|
            assert!(potential_value(p(12.0, 22.75), x).norm() < 5e-12);
            assert!(potential_value(p(1.0, 0.0), x).norm() < 1e-25);
        }
        for x in [0.3, 1.7, 4.0] {
            let a = potential_value(p(0.0, 1.0), x);
            let b = potential_value(p(0.0, 1.0), -x);
            assert_eq!(a.im, -b.im);
            let q = p(2.5, -3.0);
            assert_eq!(q.potential_value(-x), q.potential_value(x).conj());
        }
    }

    #[test]
    fn derived_params_examples() {
        let d = derive_params(p(1.0, 7.75));
        assert_eq!(d.r, Complex64::new(1.5, 0.0));
        assert_relative_eq!(d.s.re, 1.274_754_878_398_196, max_relative = 1e-12);
        assert_eq!(d.s.im, 0.0);
        assert_relative_eq!(d.t.im, d.s.re, max_relative = 1e-15);
        assert_eq!(d.t, I * d.s);

        let d = derive_params(p(6.0, 0.0));
        assert_eq!(d.r, Complex64::new(1.25, 0.0));
        assert_eq!(d.t, Complex64::new(1.25, 0.0));
        assert_eq!(d.s, Complex64::new(0.0, 1.25));
        assert_eq!(d.t, -I * d.s);

        let d = derive_params(p(0.0, 0.0));
        assert_eq!(d.r, Complex64::new(0.25, 0.0));
        assert_eq!(d.s, Complex64::new(0.0, 0.25));
        assert_eq!(d.t, Complex64::new(0.25, 0.0));
    }

    #[test]
    fn free_particle_amplitude_is_one() {
        for k in [0.3, 1.0, 2.7] {
            let t = transmission_amplitude(p(0.0, 0.0), Complex64::new(k, 0.0))
                .unwrap()
                .finite()
                .unwrap();
            assert!((t - 1.0).norm() < 1e-12, "k = {k}: {t}");
        }
        assert!((transmission_coefficient(p(0.0, 0.0), 0.7).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn printed_form_is_unimodular_for_free_particle() {
        let t = transmission_amplitude_as_printed(p(0.0, 0.0), 1.0)
            .unwrap()
            .finite()
            .unwrap();
        assert!((t.norm() - 1.0).abs() < 1e-12);
        assert!((t - 1.0).norm() > 0.1);
        for (q, k) in [(p(6.0, 2.0), 0.8), (p(1.0, 5.0), 1.3)] {
            let a = transmission_amplitude_as_printed(q, k).unwrap().finite().unwrap();
            let b = transmission_coefficient(q, k).unwrap();
            assert_relative_eq!(a.norm_sqr(), b, max_relative = 1e-12);
        }
    }

    #[test]
    fn matches_textbook_sech2_transmission() {
        for depth in [0.5, 2.0, 3.3, 6.0] {
            for k in [0.2, 0.9, 2.5] {
                let t = transmission_coefficient(p(depth, 0.0), k).unwrap();
                assert_relative_eq!(t, sech2_well_t(depth, k), max_relative = 1e-11);
            }
        }
    }

    #[test]
    fn reflectionless_wells() {
        for lambda in [1.0, 2.0, 3.0] {
            let v1 = lambda * (lambda + 1.0);
            for i in 0..=48 {
                let k = 0.2 + 0.1 * f64::from(i);
                let t = transmission_coefficient(p(v1, 0.0), k).unwrap();
                assert!((t - 1.0).abs() < 1e-9, "λ = {lambda}, k = {k}: {t}");
            }
        }
    }

    #[test]
    fn singular_point_is_a_pole() {
        let q = p(1.0, 7.75);
        let s = derive_params(q).s.re;
        assert_eq!(
            transmission_amplitude(q, Complex64::new(s, 0.0)).unwrap(),
            EvalOutcome::Pole(1)
        );
        assert_eq!(transmission_coefficient(q, s).unwrap(), f64::INFINITY);
        // 2.7823 at k = 1.2, already past 2e4 within 1e-3 of the pole
        let far = transmission_coefficient(q, 1.2).unwrap();
        assert!((far - 2.782_298_688_921_3).abs() < 1e-9, "{far}");
        for dk in [-1e-3, 1e-3] {
            let near = transmission_coefficient(q, s + dk).unwrap();
            assert!(near.is_finite() && near > 2e4, "{near}");
        }
    }

    #[test]
    fn threshold_is_rejected() {
        assert_eq!(
            transmission_amplitude(p(1.0, 1.0), Complex64::new(0.0, 0.0)),
            Err(AnalyticError::Threshold)
        );
        assert_eq!(transmission_coefficient(p(1.0, 1.0), 0.0), Err(AnalyticError::Threshold));
        assert_eq!(
            inverse_transmission(p(1.0, 1.0), Complex64::new(0.0, 0.0)),
            Err(AnalyticError::Threshold)
        );
    }

    #[test]
    fn inverse_matches_reciprocal() {
        for (q, k) in [
            (p(6.0, 2.0), Complex64::new(0.7, 0.3)),
            (p(1.0, 5.0), Complex64::new(1.1, -0.2)),
            (p(-2.0, 3.0), Complex64::new(2.0, 0.1)),
        ] {
            let t = transmission_amplitude(q, k).unwrap().finite().unwrap();
            let inv = inverse_transmission(q, k).unwrap();
            assert!((t * inv - 1.0).norm() < 1e-11);
        }
    }

    #[test]
    fn phase_classification() {
        assert_eq!(pt_phase(p(6.0, 2.0)), PtPhase::Unbroken);
        assert_eq!(pt_phase(p(1.0, 7.75)), PtPhase::Broken);
        assert_eq!(pt_phase(p(1.0, 1.25)), PtPhase::SingularBoundary);
        assert_eq!(pt_phase(p(1.0, -1.25)), PtPhase::SingularBoundary);
        assert_eq!(pt_phase(p(1.0, 1.2499)), PtPhase::Unbroken);
        assert_eq!(pt_phase(p(1.0, 1.2501)), PtPhase::Broken);
        assert_eq!(pt_phase(p(-1.0, 0.0)), PtPhase::Broken);
    }

    #[test]
    fn spectrum_of_reflectionless_well() {
        let report = bound_spectrum(p(6.0, 0.0));
        assert_eq!(report.phase, PtPhase::Unbroken);
        let plus = report.energies(Branch::Plus);
        assert_eq!(plus, vec![Complex64::new(-4.0, 0.0), Complex64::new(-1.0, 0.0)]);
        assert!(report.energies(Branch::Minus).is_empty());
    }

    #[test]
    fn spectrum_unbroken_complex_potential() {
        let report = bound_spectrum(p(6.0, 2.0));
        let plus = report.energies(Branch::Plus);
        assert_eq!(plus.len(), 2);
        // r + t = ½(√8.25 + √4.25)
        let depth = 0.5 * (8.25f64.sqrt() + 4.25f64.sqrt());
        assert_relative_eq!(plus[0].re, -(depth - 0.5).powi(2), max_relative = 1e-14);
        assert_relative_eq!(plus[1].re, -(depth - 1.5).powi(2), max_relative = 1e-14);
        assert!((plus[0].re + 3.8688).abs() < 1e-4 && (plus[1].re + 0.9349).abs() < 1e-4);
        assert!(report.energies(Branch::Minus).is_empty());
        assert_eq!(bound_spectrum(p(6.0, -2.0)), report);
    }

    #[test]
    fn spectrum_broken_phase_pairs() {
        let report = bound_spectrum(p(1.0, 5.0));
        assert_eq!(report.phase, PtPhase::Broken);
        assert_eq!(report.levels.len(), 2);
        let (a, b) = (report.levels[0].energy, report.levels[1].energy);
        assert_relative_eq!(a.re, b.re, max_relative = 1e-14);
        assert_relative_eq!(a.im, -b.im, max_relative = 1e-14);
        // -(½ - r ∓ is)², r = 1.25, s² = 0.9375
        assert_relative_eq!(a.re, 0.9375 - 0.5625, max_relative = 1e-13);
        assert_relative_eq!(a.im.abs(), 2.0 * 0.75 * 0.9375f64.sqrt(), max_relative = 1e-13);
        assert!(report.levels.iter().all(|l| l.n == 0 && l.branch == Branch::ConjugatePair));
    }

    #[test]
    fn free_particle_has_no_levels() {
        assert!(bound_spectrum(p(0.0, 0.0)).levels.is_empty());
    }

    #[test]
    fn literal_counting_adds_edge_levels() {
        let literal = literal_integer_part_levels(p(6.0, 0.0));
        let energies: Vec<f64> = literal.iter().map(|l| l.energy.re).collect();
        assert_eq!(energies, vec![-4.0, -1.0, -0.0, -0.25]);
    }

    #[test]
    fn singularity_examples() {
        let rep = singularity_check(p(1.0, 7.75), 1e-9);
        assert!(rep.satisfied);
        assert_eq!(rep.n, Some(1));
        assert_eq!(rep.e_star, Some(1.625));

        let rep = singularity_check(p(2.0, 22.75), 1e-9);
        assert!(rep.satisfied);
        assert_eq!(rep.n, Some(2));
        assert_eq!(rep.e_star, Some(5.125));

        let rep = singularity_check(p(6.0, 2.0), 1e-9);
        assert!(!rep.satisfied);
        assert_eq!(rep.n, Some(1));
        assert_eq!(rep.detuning, -0.75);

        // sum matches but E* < 0
        let rep = singularity_check(p(8.0, 0.75), 1e-9);
        assert_eq!(rep.detuning, 0.0);
        assert!(!rep.positivity_ok && !rep.satisfied);

        let rep = singularity_check(p(0.0, 0.0), 1e-9);
        assert_eq!((rep.n, rep.detuning), (Some(1), -8.75));

        assert!(singularity_check(p(1.0, -7.75), 1e-9).satisfied);
    }

    #[test]
    fn nearest_level_picks_closest_target() {
        assert_eq!(nearest_level(8.75), Some(1));
        assert_eq!(nearest_level(15.0), Some(1));
        assert_eq!(nearest_level(16.0), Some(1));
        assert_eq!(nearest_level(17.0), Some(2));
        assert_eq!(nearest_level(24.75), Some(2));
        assert_eq!(nearest_level(-3.0), Some(1));
        assert_eq!(nearest_level(f64::NAN), None);
    }

    #[test]
    fn solve_v2_examples() {
        assert_eq!(singularity_solve_v2(1.0, 1), Ok((7.75, 1.625)));
        assert_eq!(singularity_solve_v2(-1.0, 1), Ok((9.75, 2.625)));
        assert_eq!(singularity_solve_v2(1.0, 2), Ok((23.75, 5.625)));
        assert_eq!(singularity_solve_v2(2.0, 2), Ok((22.75, 5.125)));
        assert!(matches!(
            singularity_solve_v2(5.0, 1),
            Err(AnalyticError::Positivity { abstract_ok: false, .. })
        ));
        assert_eq!(singularity_solve_v2(1.0, 0), Err(AnalyticError::LevelIndex(0)));
    }

    #[test]
    fn e_star_equals_s_squared_on_the_condition() {
        for (v1, n) in [(1.0, 1), (-1.0, 1), (2.0, 2), (0.3, 3), (-7.5, 2)] {
            let (v2, e_star) = singularity_solve_v2(v1, n).unwrap();
            let s = derive_params(p(v1, v2)).s;
            assert!((s * s - e_star).norm() <= 1e-12 * e_star.max(1.0));
        }
    }
}
