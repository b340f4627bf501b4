//! Poles of the analytic transmission amplitude in the complex k-plane.
//!
//! Poles of `t(k)` are located as zeros of the entire function `1/t(k)`
//! with a damped Newton iteration and a central-difference derivative.

use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::scarf2::{self, AnalyticError, PotentialParams};

/// Half-width of the band around the real and imaginary axes used to
/// classify a pole.
pub const CLASSIFY_MARGIN: f64 = 1e-8;
/// Largest accepted `|1/t|` at a returned pole.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Newton stops once the step falls below this.
pub const STEP_TOL: f64 = 1e-12;
/// Poles closer than this are merged during a scan.
pub const MERGE_DISTANCE: f64 = 1e-8;

const MAX_ITER: usize = 100;
const MAX_HALVINGS: usize = 40;
const THRESHOLD_RADIUS: f64 = 1e-6;
/// Largest displacement of a tracked pole accepted per continuation step.
const MAX_JUMP: f64 = 0.25;
const MAX_BISECTIONS: u32 = 24;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PoleError {
    #[error("Newton iteration did not converge after {iterations} iterations (last k = {k})")]
    NonConvergence { iterations: usize, k: Complex64 },
    #[error("Newton iteration stagnated near the threshold k = 0 (k = {k})")]
    Stagnation { k: Complex64 },
    #[error("search region comes within {0:e} of the threshold k = 0")]
    RegionTouchesThreshold(f64),
    #[error("invalid search region: {0}")]
    InvalidRegion(String),
    #[error("detunings must be nonzero and sorted by non-increasing magnitude")]
    InvalidDetunings,
    #[error("continuation lost the pole at detuning {delta}")]
    LostPole { delta: f64 },
    #[error(transparent)]
    Analytic(#[from] AnalyticError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum PoleKind {
    /// `Im k > δ`: normalizable; real negative energy on the imaginary axis,
    /// complex energy otherwise.
    Bound,
    /// `Im k < -δ` on the imaginary axis.
    Antibound,
    /// `Im k < -δ` off the imaginary axis.
    Resonance,
    /// `|Im k| <= δ`, `k ≠ 0`: a real-energy pole of zero width.
    SpectralSingularity,
}

impl fmt::Display for PoleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PoleKind::Bound => "BOUND",
            PoleKind::Antibound => "ANTIBOUND",
            PoleKind::Resonance => "RESONANCE",
            PoleKind::SpectralSingularity => "SPECTRAL-SINGULARITY",
        })
    }
}

pub fn classify(k: Complex64) -> PoleKind {
    if k.im.abs() <= CLASSIFY_MARGIN {
        PoleKind::SpectralSingularity
    } else if k.im > 0.0 {
        PoleKind::Bound
    } else if k.re.abs() <= CLASSIFY_MARGIN {
        PoleKind::Antibound
    } else {
        PoleKind::Resonance
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleRecord {
    pub k_pole: Complex64,
    pub energy: Complex64,
    pub kind: PoleKind,
    /// `|1/t(k_pole)|`.
    pub residual: f64,
    pub iterations: usize,
}

fn inverse_t(p: PotentialParams, k: Complex64) -> Option<Complex64> {
    scarf2::inverse_transmission(p, k)
        .ok()
        .filter(|v| v.re.is_finite() && v.im.is_finite())
}

/// Damped Newton search for a pole of t(k) starting at `seed`.
pub fn find_pole(p: PotentialParams, seed: Complex64) -> Result<PoleRecord, PoleError> {
    if seed.norm() < THRESHOLD_RADIUS {
        return Err(PoleError::Stagnation { k: seed });
    }
    let mut k = seed;
    let mut g = inverse_t(p, k).ok_or(PoleError::NonConvergence { iterations: 0, k })?;

    for iter in 1..=MAX_ITER {
        if g.norm() == 0.0 {
            return finish(p, k, iter - 1);
        }
        let h = 1e-7 * k.norm().max(1.0);
        let (Some(gp), Some(gm)) = (inverse_t(p, k + h), inverse_t(p, k - h)) else {
            return Err(PoleError::NonConvergence { iterations: iter, k });
        };
        let dg = (gp - gm) / (2.0 * h);
        if dg.norm() == 0.0 || !dg.re.is_finite() || !dg.im.is_finite() {
            return Err(PoleError::NonConvergence { iterations: iter, k });
        }
        let mut step = -g / dg;
        let cap = 0.5 * k.norm().max(1.0);
        if step.norm() > cap {
            step *= cap / step.norm();
        }

        let mut accepted = None;
        let mut lambda = 1.0;
        for _ in 0..MAX_HALVINGS {
            let trial = k + step * lambda;
            if let Some(gt) = inverse_t(p, trial) {
                if gt.norm() < g.norm() {
                    accepted = Some((trial, gt, step.norm() * lambda));
                    break;
                }
            }
            if step.norm() * lambda < STEP_TOL {
                // at the noise floor of 1/t: no further decrease is possible
                return finish(p, k, iter);
            }
            lambda *= 0.5;
        }
        let Some((k_new, g_new, moved)) = accepted else {
            return Err(PoleError::NonConvergence { iterations: iter, k });
        };
        k = k_new;
        g = g_new;
        if k.norm() < THRESHOLD_RADIUS {
            return Err(PoleError::Stagnation { k });
        }
        if moved < STEP_TOL {
            return finish(p, k, iter);
        }
    }
    Err(PoleError::NonConvergence {
        iterations: MAX_ITER,
        k,
    })
}

fn finish(p: PotentialParams, k: Complex64, iterations: usize) -> Result<PoleRecord, PoleError> {
    let residual = inverse_t(p, k).map_or(f64::INFINITY, |g| g.norm());
    if residual > RESIDUAL_TOL {
        return Err(PoleError::NonConvergence { iterations, k });
    }
    Ok(PoleRecord {
        k_pole: k,
        energy: k * k,
        kind: classify(k),
        residual,
        iterations,
    })
}

/// Closed rectangle in the complex k-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Region {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Region {
    pub fn new(re: (f64, f64), im: (f64, f64)) -> Self {
        Self {
            re_min: re.0,
            re_max: re.1,
            im_min: im.0,
            im_max: im.1,
        }
    }

    pub fn contains(&self, k: Complex64) -> bool {
        let slack = MERGE_DISTANCE;
        k.re >= self.re_min - slack
            && k.re <= self.re_max + slack
            && k.im >= self.im_min - slack
            && k.im <= self.im_max + slack
    }

    pub fn distance_to_origin(&self) -> f64 {
        let dx = if self.re_min > 0.0 {
            self.re_min
        } else if self.re_max < 0.0 {
            -self.re_max
        } else {
            0.0
        };
        let dy = if self.im_min > 0.0 {
            self.im_min
        } else if self.im_max < 0.0 {
            -self.im_max
        } else {
            0.0
        };
        dx.hypot(dy)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoleScan {
    /// Distinct poles inside the region, sorted by real then imaginary part.
    pub poles: Vec<PoleRecord>,
    pub seeds: usize,
    /// Seeds whose iteration failed.
    pub failed: usize,
    /// Seeds that converged to a pole outside the region.
    pub outside: usize,
}

/// Newton search from a `seed_density × seed_density` grid of seeds placed
/// at the cell centres of `region`.
pub fn scan_poles(
    p: PotentialParams,
    region: Region,
    seed_density: usize,
) -> Result<PoleScan, PoleError> {
    if !(region.re_min < region.re_max && region.im_min < region.im_max) {
        return Err(PoleError::InvalidRegion(format!("{region:?}")));
    }
    if seed_density == 0 {
        return Err(PoleError::InvalidRegion("seed density must be positive".into()));
    }
    let gap = region.distance_to_origin();
    if gap < 1e-3 {
        return Err(PoleError::RegionTouchesThreshold(gap));
    }
    let n = seed_density;
    let seeds: Vec<Complex64> = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx % n, idx / n);
            let fx = (i as f64 + 0.5) / n as f64;
            let fy = (j as f64 + 0.5) / n as f64;
            Complex64::new(
                region.re_min + fx * (region.re_max - region.re_min),
                region.im_min + fy * (region.im_max - region.im_min),
            )
        })
        .collect();

    let outcomes: Vec<Result<PoleRecord, PoleError>> =
        seeds.par_iter().map(|&s| find_pole(p, s)).collect();

    let mut failed = 0;
    let mut outside = 0;
    let mut found: Vec<PoleRecord> = Vec::new();
    for outcome in outcomes {
        match outcome {
            Ok(rec) if region.contains(rec.k_pole) => found.push(rec),
            Ok(_) => outside += 1,
            Err(_) => failed += 1,
        }
    }
    Ok(PoleScan {
        poles: dedup_poles(found),
        seeds: seeds.len(),
        failed,
        outside,
    })
}

fn dedup_poles(mut found: Vec<PoleRecord>) -> Vec<PoleRecord> {
    found.sort_by(|a, b| a.residual.total_cmp(&b.residual));
    let mut unique: Vec<PoleRecord> = Vec::new();
    for rec in found {
        if unique
            .iter()
            .all(|u| (u.k_pole - rec.k_pole).norm() >= MERGE_DISTANCE)
        {
            unique.push(rec);
        }
    }
    unique.sort_by(|a, b| {
        a.k_pole
            .re
            .total_cmp(&b.k_pole.re)
            .then(a.k_pole.im.total_cmp(&b.k_pole.im))
    });
    unique
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub delta: f64,
    pub v2: f64,
    pub pole: PoleRecord,
}

/// Pole positions as `V2` is detuned from a spectral-singularity point.
#[derive(Debug, Clone, PartialEq)]
pub struct DetuningTrace {
    pub v1: f64,
    pub n: u32,
    pub v2_star: f64,
    pub e_star: f64,
    pub points: Vec<TracePoint>,
    /// The pole continued from the last point back to zero detuning.
    pub endpoint: PoleRecord,
}

impl DetuningTrace {
    /// `|Im k|` strictly decreases along the trace and down to the endpoint.
    pub fn widths_strictly_decreasing(&self) -> bool {
        let widths: Vec<f64> = self
            .points
            .iter()
            .map(|pt| pt.pole.k_pole.im.abs())
            .chain(std::iter::once(self.endpoint.k_pole.im.abs()))
            .collect();
        widths.windows(2).all(|w| w[1] < w[0])
    }
}

/// Tracks the pole born at the spectral singularity of level `n` as
/// `V2 = V2* + δ` runs through `deltas`, then back to `δ = 0`.
///
/// Each step starts Newton from the previous pole; if the pole is lost
/// (failure, or a jump larger than a fixed bound) the detuning step is
/// bisected.
pub fn width_vs_detuning(v1: f64, n: u32, deltas: &[f64]) -> Result<DetuningTrace, PoleError> {
    if deltas.iter().any(|d| *d == 0.0 || !d.is_finite())
        || deltas.windows(2).any(|w| w[1].abs() > w[0].abs())
    {
        return Err(PoleError::InvalidDetunings);
    }
    let (v2_star, e_star) = scarf2::singularity_solve_v2(v1, n)?;
    let params = |delta: f64| PotentialParams::new(v1, v2_star + delta);

    let mut prev_delta = 0.0;
    let mut prev_k = Complex64::new(e_star.sqrt(), 0.0);
    let mut points = Vec::with_capacity(deltas.len());
    for &delta in deltas {
        let pole = track(&params, prev_delta, prev_k, delta, 0)?;
        points.push(TracePoint {
            delta,
            v2: v2_star + delta,
            pole,
        });
        prev_delta = delta;
        prev_k = pole.k_pole;
    }
    let endpoint = if points.is_empty() {
        find_pole(params(0.0), prev_k)?
    } else {
        track(&params, prev_delta, prev_k, 0.0, 0)?
    };
    Ok(DetuningTrace {
        v1,
        n,
        v2_star,
        e_star,
        points,
        endpoint,
    })
}

fn track<F>(
    params: &F,
    from_delta: f64,
    from_k: Complex64,
    to_delta: f64,
    depth: u32,
) -> Result<PoleRecord, PoleError>
where
    F: Fn(f64) -> PotentialParams,
{
    match find_pole(params(to_delta), from_k) {
        Ok(rec) if (rec.k_pole - from_k).norm() <= MAX_JUMP => Ok(rec),
        _ if depth < MAX_BISECTIONS => {
            let mid = 0.5 * (from_delta + to_delta);
            let half = track(params, from_delta, from_k, mid, depth + 1)?;
            track(params, mid, half.k_pole, to_delta, depth + 1)
        }
        _ => Err(PoleError::LostPole { delta: to_delta }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v1: f64, v2: f64) -> PotentialParams {
        PotentialParams::new(v1, v2)
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn bound_states_of_reflectionless_well() {
        let rec = find_pole(p(6.0, 0.0), c(0.0, 2.0)).unwrap();
        assert!((rec.k_pole - c(0.0, 2.0)).norm() < 1e-8);
        assert!((rec.energy - c(-4.0, 0.0)).norm() < 1e-8);
        assert_eq!(rec.kind, PoleKind::Bound);

        let rec = find_pole(p(6.0, 0.0), c(0.0, 0.9)).unwrap();
        assert!((rec.k_pole - c(0.0, 1.0)).norm() < 1e-8);
        assert_eq!(rec.kind, PoleKind::Bound);
        assert!(rec.residual <= RESIDUAL_TOL);
    }

    #[test]
    fn spectral_singularity_pole() {
        let rec = find_pole(p(1.0, 7.75), c(1.27, 0.01)).unwrap();
        assert!((rec.k_pole - c(1.274_754_878_398_196, 0.0)).norm() < 1e-10);
        assert_eq!(rec.kind, PoleKind::SpectralSingularity);
        assert!((rec.energy.re - 1.625).abs() < 1e-10);
    }

    #[test]
    fn classification_bands() {
        assert_eq!(classify(c(0.0, 1.0)), PoleKind::Bound);
        assert_eq!(classify(c(0.8, 0.3)), PoleKind::Bound);
        assert_eq!(classify(c(0.0, -1.0)), PoleKind::Antibound);
        assert_eq!(classify(c(1.0, -0.2)), PoleKind::Resonance);
        assert_eq!(classify(c(1.0, 5e-9)), PoleKind::SpectralSingularity);
    }

    #[test]
    fn threshold_seed_is_rejected() {
        assert!(matches!(
            find_pole(p(1.0, 1.0), c(0.0, 0.0)),
            Err(PoleError::Stagnation { .. })
        ));
    }

    #[test]
    fn scan_reflectionless_well() {
        let scan = scan_poles(p(6.0, 0.0), Region::new((-0.5, 0.5), (0.1, 3.0)), 6).unwrap();
        let ks: Vec<Complex64> = scan.poles.iter().map(|r| r.k_pole).collect();
        assert_eq!(ks.len(), 2, "{ks:?}");
        let mut ims: Vec<f64> = ks.iter().map(|k| k.im).collect();
        ims.sort_by(f64::total_cmp);
        assert!((ims[0] - 1.0).abs() < 1e-8 && (ims[1] - 2.0).abs() < 1e-8);
        assert!(ks.iter().all(|k| k.re.abs() < 1e-8));
    }

    #[test]
    fn scan_singular_parameters_finds_one_real_pole() {
        let scan = scan_poles(p(1.0, 7.75), Region::new((0.5, 2.0), (-0.5, 0.5)), 6).unwrap();
        assert_eq!(scan.poles.len(), 1, "{:?}", scan.poles);
        assert_eq!(scan.poles[0].kind, PoleKind::SpectralSingularity);
        assert!((scan.poles[0].k_pole.re - 1.274_754_9).abs() < 1e-7);
    }

    #[test]
    fn free_particle_has_no_poles() {
        let scan = scan_poles(p(0.0, 0.0), Region::new((0.2, 3.0), (-1.0, 2.0)), 5).unwrap();
        assert!(scan.poles.is_empty());
        assert_eq!(scan.failed + scan.outside, scan.seeds);
    }

    #[test]
    fn region_must_avoid_threshold() {
        assert!(matches!(
            scan_poles(p(6.0, 0.0), Region::new((-1.0, 1.0), (-1.0, 1.0)), 3),
            Err(PoleError::RegionTouchesThreshold(_))
        ));
        assert!(matches!(
            scan_poles(p(6.0, 0.0), Region::new((1.0, 0.5), (0.1, 1.0)), 3),
            Err(PoleError::InvalidRegion(_))
        ));
    }

    #[test]
    fn detuning_trace_narrows_to_zero_width() {
        let deltas: Vec<f64> = (0..7).map(|j| 0.4 * 0.5f64.powi(j)).collect();
        let trace = width_vs_detuning(1.0, 1, &deltas).unwrap();
        assert_eq!(trace.v2_star, 7.75);
        assert!(trace.widths_strictly_decreasing());
        assert!(trace.endpoint.k_pole.im.abs() < 1e-6);
        // closed form of the tracked pole: k = s + i(r - 3/2)
        for pt in &trace.points {
            let d = scarf2::derive_params(p(1.0, pt.v2));
            let expected = d.s + c(0.0, 1.0) * (d.r - 1.5);
            assert!((pt.pole.k_pole - expected).norm() < 1e-9);
        }
    }

    #[test]
    fn detuning_sign_decides_half_plane() {
        let trace = width_vs_detuning(1.0, 1, &[0.2, -0.2]).unwrap();
        assert!(trace.points[0].pole.k_pole.im > 0.0);
        assert!(trace.points[1].pole.k_pole.im < 0.0);
        assert_eq!(trace.points[1].pole.kind, PoleKind::Resonance);
    }

    #[test]
    fn detunings_validated() {
        assert_eq!(width_vs_detuning(1.0, 1, &[0.1, 0.2]), Err(PoleError::InvalidDetunings));
        assert_eq!(width_vs_detuning(1.0, 1, &[0.0]), Err(PoleError::InvalidDetunings));
        assert!(matches!(
            width_vs_detuning(9.0, 1, &[0.1]),
            Err(PoleError::Analytic(AnalyticError::Positivity { .. }))
        ));
    }
}
