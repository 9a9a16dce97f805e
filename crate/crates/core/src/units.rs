//! Physical constants and unit conversions, frozen in one place.
//!
//! Internal units: eV for energies and rates (ħ = 1), nm for lengths,
//! Debye for dipole moments.

use std::f64::consts::PI;

/// ħc in eV·nm.
pub const HBAR_C_EV_NM: f64 = 197.327;

/// Elementary charge, C (also J per eV).
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

/// Vacuum permittivity, F/m.
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;

/// One Debye in C·m.
pub const DEBYE: f64 = 3.335_640_952e-30;

/// (1 D)² / (4πε₀ · 1 nm³) expressed in eV (≈ 6.24e-4 eV).
pub fn dipole_energy_unit() -> f64 {
    DEBYE * DEBYE / (4.0 * PI * EPSILON_0 * 1e-27) / ELEMENTARY_CHARGE
}

/// μ² / ε₀ for μ in Debye, expressed in eV·nm³.
pub(crate) fn dipole_sq_over_eps0(mu_debye: f64) -> f64 {
    4.0 * PI * dipole_energy_unit() * mu_debye * mu_debye
}

/// Inverse of [`dipole_sq_over_eps0`].
pub(crate) fn debye_from_sq_over_eps0(value_ev_nm3: f64) -> f64 {
    (value_ev_nm3 / (4.0 * PI * dipole_energy_unit())).sqrt()
}
