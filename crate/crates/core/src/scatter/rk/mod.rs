//! Adaptive Dormand–Prince 8(5,3) stepper for the complex first-order system
//! `(ψ, ψ')' = (ψ', (V(x) - k²) ψ)`.
//!
//! Error control follows Hairer's DOP853: the 5th- and 3rd-order embedded
//! estimates are blended into a single norm, and steps are scaled with
//! exponent 1/8.

mod tableau;

use num_complex::Complex64;

use tableau::{A, B, C, E3, E5};

pub type State = [Complex64; 2];

const STAGES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepControl {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct StepLimitExceeded {
    pub steps: usize,
    pub x: f64,
}

/// Integrates the Schrödinger system from `x0` to `x1` (either direction),
/// starting from `y0`. Returns the final state, the accepted step count and
/// the last proposed step size.
pub(crate) fn integrate<V>(
    potential: V,
    k2: f64,
    x0: f64,
    y0: State,
    x1: f64,
    ctl: &StepControl,
    h_start: f64,
) -> Result<(State, usize, f64), StepLimitExceeded>
where
    V: Fn(f64) -> Complex64,
{
    let rhs = |x: f64, y: &State| -> State { [y[1], (potential(x) - k2) * y[0]] };
    let span = x1 - x0;
    if span == 0.0 {
        return Ok((y0, 0, h_start));
    }
    let dir = span.signum();
    let mut h = h_start.abs().min(span.abs()) * dir;
    let mut x = x0;
    let mut y = y0;
    let mut f0 = rhs(x, &y);
    let mut steps = 0usize;
    let mut attempts = 0usize;
    let zero = Complex64::new(0.0, 0.0);

    loop {
        let remaining = x1 - x;
        if remaining * dir <= 0.0 {
            break;
        }
        let last = h * dir >= remaining * dir;
        if last {
            h = remaining;
        }
        attempts += 1;
        if attempts > ctl.max_steps {
            return Err(StepLimitExceeded { steps, x });
        }

        let mut k = [[zero; 2]; STAGES + 1];
        k[0] = f0;
        for s in 1..STAGES {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(s) {
                let a = A[s][j];
                if a != 0.0 {
                    ys[0] += kj[0] * (a * h);
                    ys[1] += kj[1] * (a * h);
                }
            }
            k[s] = rhs(x + C[s] * h, &ys);
        }
        let mut y_new = y;
        for (s, ks) in k.iter().enumerate().take(STAGES) {
            y_new[0] += ks[0] * (B[s] * h);
            y_new[1] += ks[1] * (B[s] * h);
        }
        let x_new = if last { x1 } else { x + h };
        let f_new = rhs(x_new, &y_new);
        k[STAGES] = f_new;

        let mut err5_sq = 0.0;
        let mut err3_sq = 0.0;
        for i in 0..2 {
            let scale = ctl.abs_tol + ctl.rel_tol * y[i].norm().max(y_new[i].norm());
            let mut e5 = zero;
            let mut e3 = zero;
            for s in 0..=STAGES {
                e5 += k[s][i] * E5[s];
                e3 += k[s][i] * E3[s];
            }
            err5_sq += (e5.norm() / scale).powi(2);
            err3_sq += (e3.norm() / scale).powi(2);
        }
        let err = if err5_sq == 0.0 && err3_sq == 0.0 {
            0.0
        } else {
            h.abs() * err5_sq / ((err5_sq + 0.01 * err3_sq) * 2.0).sqrt()
        };

        if err <= 1.0 {
            x = x_new;
            y = y_new;
            f0 = f_new;
            steps += 1;
            let factor = if err == 0.0 { 10.0 } else { (0.9 * err.powf(-0.125)).clamp(0.2, 10.0) };
            if !last {
                h *= factor;
            }
        } else {
            let factor = if err.is_finite() { (0.9 * err.powf(-0.125)).clamp(0.2, 0.9) } else { 0.1 };
            h *= factor;
        }
    }
    Ok((y, steps, h))
}
