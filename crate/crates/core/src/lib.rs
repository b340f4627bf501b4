//! Scattering off the complex PT-symmetric Scarf II potential
//! `V(x) = -V1 sech²x + i V2 sech x tanh x`: closed-form transmission and
//! spectra, spectral-singularity detection, a numerical scattering solver
//! and a pole finder for the transmission amplitude.

pub mod cgamma;
pub mod cli;
pub mod poles;
pub mod report;
pub mod scarf2;
pub mod scatter;
pub mod validate;
