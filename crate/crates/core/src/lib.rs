//! Strong coupling of a quantum emitter to the bright (dipolar) and dark
//! (higher-multipole pseudomode) plasmons of a metal nanoparticle.
//!
//! The crate is organised around five pieces:
//!
//! * [`cmt`]: classical three-mode coupled-mode theory (scattering spectra,
//!   complex eigenmodes, Hopfield coefficients).
//! * [`analytics`]: closed-form polariton algebra for the lossless model.
//! * [`nanosphere`]: quasistatic Drude sphere + point dipole, producing the
//!   effective bright/dark parameters used by the other models.
//! * [`quantum`]: weak-pump steady state, scattering intensity and g²(0) in a
//!   truncated Fock space, with a dense Lindblad oracle.
//! * [`sweep`]: configuration, parameter sweeps, figure presets and output.
//!
//! Units: ħ = 1, energies/frequencies/rates in eV, lengths in nm, dipole
//! moments in Debye.

pub mod analytics;
pub mod cmt;
mod error;
mod linalg;
pub mod nanosphere;
pub mod peaks;
pub mod quantum;
pub mod sweep;
pub mod units;

pub use error::{Error, Result};
pub use num_complex::Complex64;
