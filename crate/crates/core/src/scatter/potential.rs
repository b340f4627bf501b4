use num_complex::Complex64;

use crate::scarf2::PotentialParams;

/// Magnitude below which a potential tail is considered negligible when
/// computing [`Potential::decay_bound`].
pub const DECAY_THRESHOLD: f64 = 1e-14;

/// A complex potential on the real line that vanishes at both ends.
pub trait Potential: Sync {
    fn value(&self, x: f64) -> Complex64;

    /// `L₀` such that `|V(x)| < 1e-14` for `|x| > L₀`.
    fn decay_bound(&self) -> f64;
}

impl<P: Potential + ?Sized> Potential for &P {
    fn value(&self, x: f64) -> Complex64 {
        (**self).value(x)
    }

    fn decay_bound(&self) -> f64 {
        (**self).decay_bound()
    }
}

impl Potential for PotentialParams {
    fn value(&self, x: f64) -> Complex64 {
        self.potential_value(x)
    }

    fn decay_bound(&self) -> f64 {
        // |V| <= 4|V1| e^{-2|x|} + 2|V2| e^{-|x|}; give each half the budget.
        let real = if self.v1 != 0.0 {
            0.5 * (8.0 * self.v1.abs() / DECAY_THRESHOLD).ln()
        } else {
            0.0
        };
        let imag = if self.v2 != 0.0 {
            (4.0 * self.v2.abs() / DECAY_THRESHOLD).ln()
        } else {
            0.0
        };
        real.max(imag).max(0.0)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FreeParticle;

impl Potential for FreeParticle {
    fn value(&self, _x: f64) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    fn decay_bound(&self) -> f64 {
        0.0
    }
}

/// `x ↦ V(-x)`.
#[derive(Debug, Clone, Copy)]
pub struct Mirrored<P>(pub P);

impl<P: Potential> Potential for Mirrored<P> {
    fn value(&self, x: f64) -> Complex64 {
        self.0.value(-x)
    }

    fn decay_bound(&self) -> f64 {
        self.0.decay_bound()
    }
}

/// Arbitrary potential from a closure and a caller-supplied decay bound.
pub struct FnPotential<F> {
    f: F,
    decay_bound: f64,
}

impl<F> FnPotential<F>
where
    F: Fn(f64) -> Complex64 + Sync,
{
    pub fn new(f: F, decay_bound: f64) -> Self {
        Self { f, decay_bound }
    }
}

impl<F> Potential for FnPotential<F>
where
    F: Fn(f64) -> Complex64 + Sync,
{
    fn value(&self, x: f64) -> Complex64 {
        (self.f)(x)
    }

    fn decay_bound(&self) -> f64 {
        self.decay_bound
    }
}
