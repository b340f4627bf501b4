//! Numerical 1D scattering for arbitrary complex potentials.
//!
//! The stationary equation `-ψ'' + V(x)ψ = k²ψ` is integrated backwards from
//! the transmitted side, where the solution is a pure outgoing wave
//! `ψ = e^{ikx}`, to the incident side, where it is decomposed as
//! `A e^{ikx} + B e^{-ikx}`. Then `t = 1/A` and `r = B/A`.
//!
//! Right incidence is obtained by solving the mirrored potential `V(-x)`
//! from the left.

mod potential;
mod rk;

use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use potential::{FnPotential, FreeParticle, Mirrored, Potential, DECAY_THRESHOLD};
pub use rk::StepControl;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Default truncation half-width.
pub const DEFAULT_HALF_WIDTH: f64 = 18.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScatterError {
    #[error("invalid domain configuration: {0}")]
    InvalidConfig(String),
    #[error("wavenumber must be positive and finite, got {0}")]
    InvalidWavenumber(f64),
    #[error("k grid must be strictly increasing")]
    UnsortedGrid,
    #[error("integrator exceeded {max_steps} steps (stopped at x = {x})")]
    NonConvergence { max_steps: usize, x: f64 },
    #[error("domain half-width {half_width} too small: |V(±L)| = {tail:e} exceeds {tail_tol:e}")]
    DomainTooSmall {
        half_width: f64,
        tail: f64,
        tail_tol: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DomainConfig {
    /// Truncation half-width `L`: the potential is set to zero for `|x| > L`.
    pub half_width: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
    /// Largest `|V(±L)|` accepted before the domain is reported too small.
    pub tail_tol: f64,
}

impl Default for DomainConfig {
    fn default() -> Self {
        Self {
            half_width: DEFAULT_HALF_WIDTH,
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_steps: 2_000_000,
            tail_tol: 1e-6,
        }
    }
}

impl DomainConfig {
    /// Default tolerances with a half-width of at least the potential's
    /// decay bound (and never below [`DEFAULT_HALF_WIDTH`]).
    pub fn for_potential<P: Potential>(potential: &P) -> Self {
        Self {
            half_width: DEFAULT_HALF_WIDTH.max(potential.decay_bound()),
            ..Self::default()
        }
    }

    pub fn with_half_width(self, half_width: f64) -> Self {
        Self { half_width, ..self }
    }

    pub fn validate(&self) -> Result<(), ScatterError> {
        let bad = |msg: String| Err(ScatterError::InvalidConfig(msg));
        if !(self.half_width.is_finite() && self.half_width > 0.0) {
            return bad(format!("half-width must be positive, got {}", self.half_width));
        }
        for (name, tol) in [("rel_tol", self.rel_tol), ("abs_tol", self.abs_tol)] {
            if !(tol > 0.0 && tol <= 1e-3) {
                return bad(format!("{name} must lie in (0, 1e-3], got {tol}"));
            }
        }
        if self.max_steps == 0 {
            return bad("max_steps must be positive".into());
        }
        if !(self.tail_tol > 0.0) {
            return bad(format!("tail_tol must be positive, got {}", self.tail_tol));
        }
        Ok(())
    }

    fn step_control(&self) -> StepControl {
        StepControl {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            max_steps: self.max_steps,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Side {
    LeftIncidence,
    RightIncidence,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::LeftIncidence => "LEFT-INCIDENCE",
            Side::RightIncidence => "RIGHT-INCIDENCE",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterResult {
    pub k: f64,
    pub side: Side,
    pub t_amp: Complex64,
    pub r_amp: Complex64,
    pub transmission: f64,
    pub reflection: f64,
    /// `R + T - 1`; zero for real potentials, unconstrained otherwise.
    pub flux_defect: f64,
}

struct Solution {
    /// `A`, `B` of `ψ = A e^{ikx} + B e^{-ikx}` at `x = -L`.
    incident: Complex64,
    reflected: Complex64,
    samples: Vec<Complex64>,
}

fn check_inputs<P: Potential>(potential: &P, k: f64, cfg: &DomainConfig) -> Result<(), ScatterError> {
    cfg.validate()?;
    if !(k.is_finite() && k > 0.0) {
        return Err(ScatterError::InvalidWavenumber(k));
    }
    let l = cfg.half_width;
    let tail = potential.value(l).norm().max(potential.value(-l).norm());
    if tail > cfg.tail_tol {
        return Err(ScatterError::DomainTooSmall {
            half_width: l,
            tail,
            tail_tol: cfg.tail_tol,
        });
    }
    Ok(())
}

/// Left-incidence solve, sampling ψ (transmitted amplitude 1) at `stops`,
/// which must be sorted in decreasing order and lie inside `(-L, L)`.
fn propagate<P: Potential>(
    potential: &P,
    k: f64,
    cfg: &DomainConfig,
    stops: &[f64],
) -> Result<Solution, ScatterError> {
    let l = cfg.half_width;
    let ctl = cfg.step_control();
    let v = |x: f64| potential.value(x);
    let k2 = k * k;

    let edge = (I * k * l).exp();
    let mut y = [edge, I * k * edge];
    let mut x = l;
    let mut h = (0.1 / k.max(1.0)).min(l);
    let mut budget = ctl;
    let mut samples = Vec::with_capacity(stops.len());

    for &target in stops.iter().chain(std::iter::once(&-l)) {
        let (y_next, steps, h_next) = rk::integrate(v, k2, x, y, target, &budget, h).map_err(|e| {
            ScatterError::NonConvergence {
                max_steps: cfg.max_steps,
                x: e.x,
            }
        })?;
        budget.max_steps = budget.max_steps.saturating_sub(steps).max(1);
        y = y_next;
        x = target;
        if h_next != 0.0 {
            h = h_next.abs();
        }
        if target != -l {
            samples.push(y[0]);
        }
    }

    let (psi, dpsi) = (y[0], y[1]);
    let ik = I * k;
    // ψ = A e^{ikx} + B e^{-ikx} at x = -L
    let incident = (ik * psi + dpsi) * (I * k * l).exp() / (2.0 * ik);
    let reflected = (ik * psi - dpsi) * (-I * k * l).exp() / (2.0 * ik);
    Ok(Solution {
        incident,
        reflected,
        samples,
    })
}

/// Transmission and reflection amplitudes for a unit incident wave.
pub fn solve_scattering<P: Potential>(
    potential: &P,
    k: f64,
    side: Side,
    cfg: &DomainConfig,
) -> Result<ScatterResult, ScatterError> {
    check_inputs(potential, k, cfg)?;
    let sol = match side {
        Side::LeftIncidence => propagate(potential, k, cfg, &[])?,
        Side::RightIncidence => propagate(&Mirrored(potential), k, cfg, &[])?,
    };
    let t_amp = sol.incident.inv();
    let r_amp = sol.reflected / sol.incident;
    let transmission = t_amp.norm_sqr();
    let reflection = r_amp.norm_sqr();
    Ok(ScatterResult {
        k,
        side,
        t_amp,
        r_amp,
        transmission,
        reflection,
        flux_defect: reflection + transmission - 1.0,
    })
}

/// [`solve_scattering`] over a strictly increasing grid. Points are solved in
/// parallel on the current rayon pool; failures are kept per point.
pub fn sweep<P: Potential>(
    potential: &P,
    k_grid: &[f64],
    side: Side,
    cfg: &DomainConfig,
) -> Result<Vec<Result<ScatterResult, ScatterError>>, ScatterError> {
    cfg.validate()?;
    if k_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(ScatterError::UnsortedGrid);
    }
    if let Some(&k) = k_grid.iter().find(|&&k| !(k.is_finite() && k > 0.0)) {
        return Err(ScatterError::InvalidWavenumber(k));
    }
    Ok(k_grid
        .par_iter()
        .map(|&k| solve_scattering(potential, k, side, cfg))
        .collect())
}

/// Scattering state `ψ(x)` for unit incident amplitude, sampled on `x_grid`.
/// Outside `[-L, L]` the asymptotic plane-wave forms are used.
pub fn wavefunction_export<P: Potential>(
    potential: &P,
    k: f64,
    side: Side,
    cfg: &DomainConfig,
    x_grid: &[f64],
) -> Result<Vec<(f64, Complex64)>, ScatterError> {
    check_inputs(potential, k, cfg)?;
    let l = cfg.half_width;
    // coordinates in the frame where the wave comes in from the left
    let to_frame = |x: f64| match side {
        Side::LeftIncidence => x,
        Side::RightIncidence => -x,
    };
    let mut interior: Vec<f64> = x_grid
        .iter()
        .map(|&x| to_frame(x))
        .filter(|&x| x > -l && x < l)
        .collect();
    interior.sort_by(|a, b| b.total_cmp(a));
    interior.dedup();

    let sol = match side {
        Side::LeftIncidence => propagate(potential, k, cfg, &interior)?,
        Side::RightIncidence => propagate(&Mirrored(potential), k, cfg, &interior)?,
    };
    let t = sol.incident.inv();
    let r = sol.reflected / sol.incident;

    Ok(x_grid
        .iter()
        .map(|&x| {
            let xf = to_frame(x);
            let psi = if xf >= l {
                t * (I * k * xf).exp()
            } else if xf <= -l {
                (I * k * xf).exp() + r * (-I * k * xf).exp()
            } else {
                let idx = interior
                    .binary_search_by(|probe| xf.total_cmp(probe))
                    .expect("interior point was sampled");
                sol.samples[idx] * t
            };
            (x, psi)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scarf2::PotentialParams;

    fn scarf(v1: f64, v2: f64) -> PotentialParams {
        PotentialParams::new(v1, v2)
    }

    #[test]
    fn free_particle_transmits_fully() {
        let cfg = DomainConfig::default();
        let res = solve_scattering(&FreeParticle, 1.0, Side::LeftIncidence, &cfg).unwrap();
        assert!((res.transmission - 1.0).abs() < 1e-9);
        assert!(res.reflection < 1e-20);
        assert!((res.t_amp - 1.0).norm() < 1e-9);
    }

    #[test]
    fn reflectionless_well() {
        let p = scarf(6.0, 0.0);
        let cfg = DomainConfig::for_potential(&p);
        for side in [Side::LeftIncidence, Side::RightIncidence] {
            let res = solve_scattering(&p, 1.0, side, &cfg).unwrap();
            assert!((res.transmission - 1.0).abs() < 1e-8, "{res:?}");
            assert!(res.reflection < 1e-8);
            assert!(res.flux_defect.abs() < 1e-8);
        }
    }

    #[test]
    fn singular_point_transmission_is_huge() {
        let p = scarf(1.0, 7.75);
        let cfg = DomainConfig::default();
        let res = solve_scattering(&p, 1.625f64.sqrt(), Side::LeftIncidence, &cfg).unwrap();
        assert!(res.transmission > 1e4, "{}", res.transmission);
    }

    #[test]
    fn rejects_bad_inputs() {
        let p = scarf(6.0, 0.0);
        let cfg = DomainConfig::default();
        assert_eq!(
            solve_scattering(&p, 0.0, Side::LeftIncidence, &cfg),
            Err(ScatterError::InvalidWavenumber(0.0))
        );
        let small = cfg.with_half_width(3.0);
        assert!(matches!(
            solve_scattering(&p, 1.0, Side::LeftIncidence, &small),
            Err(ScatterError::DomainTooSmall { .. })
        ));
        let loose = DomainConfig { rel_tol: 0.1, ..cfg };
        assert!(matches!(
            solve_scattering(&p, 1.0, Side::LeftIncidence, &loose),
            Err(ScatterError::InvalidConfig(_))
        ));
        let starved = DomainConfig { max_steps: 5, ..cfg };
        assert!(matches!(
            solve_scattering(&p, 1.0, Side::LeftIncidence, &starved),
            Err(ScatterError::NonConvergence { .. })
        ));
    }

    #[test]
    fn sweep_checks_grid_and_keeps_order() {
        let cfg = DomainConfig::default();
        assert_eq!(
            sweep(&FreeParticle, &[1.0, 0.5], Side::LeftIncidence, &cfg),
            Err(ScatterError::UnsortedGrid)
        );
        assert_eq!(
            sweep(&FreeParticle, &[-1.0, 0.5], Side::LeftIncidence, &cfg),
            Err(ScatterError::InvalidWavenumber(-1.0))
        );
        let out = sweep(&FreeParticle, &[0.5, 1.0, 2.0], Side::LeftIncidence, &cfg).unwrap();
        let ks: Vec<f64> = out.iter().map(|r| r.as_ref().unwrap().k).collect();
        assert_eq!(ks, vec![0.5, 1.0, 2.0]);
        assert!(out.iter().all(|r| (r.as_ref().unwrap().transmission - 1.0).abs() < 1e-9));
    }

    #[test]
    fn free_wavefunction_has_unit_modulus() {
        let cfg = DomainConfig::default();
        let grid: Vec<f64> = (-25..=25).map(|i| f64::from(i) * 0.9).collect();
        let psi = wavefunction_export(&FreeParticle, 1.0, Side::LeftIncidence, &cfg, &grid).unwrap();
        assert_eq!(psi.len(), grid.len());
        for (x, v) in psi {
            assert!((v.norm() - 1.0).abs() < 1e-9, "x = {x}: {v}");
        }
    }

    #[test]
    fn reflectionless_wavefunction_edge_modulus() {
        let p = scarf(6.0, 0.0);
        let cfg = DomainConfig::for_potential(&p);
        let l = cfg.half_width;
        let res = solve_scattering(&p, 1.0, Side::LeftIncidence, &cfg).unwrap();
        let psi = wavefunction_export(&p, 1.0, Side::LeftIncidence, &cfg, &[-l, 0.0, l]).unwrap();
        assert!((psi[2].1.norm() - res.t_amp.norm()).abs() < 1e-9);
        assert!((psi[0].1.norm() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn right_incidence_wavefunction_mirrors_left_of_flipped_potential() {
        let p = scarf(1.0, 2.0);
        let cfg = DomainConfig::for_potential(&p);
        let grid = [-2.0, -0.5, 0.0, 1.5];
        let right = wavefunction_export(&p, 1.1, Side::RightIncidence, &cfg, &grid).unwrap();
        let mirrored: Vec<f64> = grid.iter().map(|x| -x).collect();
        let left = wavefunction_export(&p.flipped(), 1.1, Side::LeftIncidence, &cfg, &mirrored).unwrap();
        for ((_, a), (_, b)) in right.iter().zip(&left) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}
