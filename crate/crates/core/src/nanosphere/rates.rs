//! Radiative rates, dipole moments and cross sections.

use std::f64::consts::PI;

use super::DrudeMetal;
use crate::error::{check_non_negative, check_positive};
use crate::units::{debye_from_sq_over_eps0, dipole_sq_over_eps0, HBAR_C_EV_NM};
use crate::{Error, Result};

/// Radiative decay of the dipolar plasmon,
/// γ_B^r = 4 ε_b^{3/2} (ω_B R / c)³ / (∂ Re ε / ∂ω).
pub fn bright_radiative_decay(m: &DrudeMetal, eps_b: f64, radius: f64, omega_b: f64) -> Result<f64> {
    m.validate()?;
    check_positive("eps_b", eps_b)?;
    check_positive("radius", radius)?;
    check_positive("omega_b", omega_b)?;
    let derivative = m.d_re_epsilon(omega_b);
    if derivative <= 0.0 || !derivative.is_finite() {
        return Err(Error::Dispersion {
            omega: omega_b,
            derivative,
        });
    }
    let size = omega_b * radius / HBAR_C_EV_NM;
    Ok(4.0 * eps_b.powf(1.5) * size.powi(3) / derivative)
}

/// Dipole moment (Debye) of a point dipole radiating at `gamma_rad` (eV):
/// μ = sqrt(3π ħ ε₀ ε_b c³ γ / ω³).
pub fn bright_dipole_moment(gamma_rad: f64, omega: f64, eps_b: f64) -> Result<f64> {
    check_non_negative("gamma_rad", gamma_rad)?;
    check_positive("omega", omega)?;
    check_positive("eps_b", eps_b)?;
    let mu_sq_over_eps0 = 3.0 * PI * eps_b * HBAR_C_EV_NM.powi(3) * gamma_rad / omega.powi(3);
    Ok(debye_from_sq_over_eps0(mu_sq_over_eps0))
}

/// Larmor rate of a dipole `mu` (Debye) at `omega` in vacuum,
/// γ = ω³ μ² / (3π ε₀ ħ c³).
pub fn emitter_radiative_decay(mu: f64, omega: f64) -> Result<f64> {
    check_non_negative("mu", mu)?;
    check_positive("omega", omega)?;
    Ok(omega.powi(3) * dipole_sq_over_eps0(mu) / (3.0 * PI * HBAR_C_EV_NM.powi(3)))
}

/// Extinction cross section (nm²) of a two-level emitter,
/// σ = ω μ² / (ħ c ε₀ γ).
pub fn extinction_cross_section(mu: f64, omega_e: f64, gamma_e: f64) -> Result<f64> {
    check_non_negative("mu", mu)?;
    check_positive("omega_e", omega_e)?;
    check_positive("gamma_e", gamma_e)?;
    Ok(omega_e * dipole_sq_over_eps0(mu) / (HBAR_C_EV_NM * gamma_e))
}

/// Inverse of [`extinction_cross_section`]: dipole moment in Debye.
pub fn dipole_from_extinction(sigma_ext: f64, omega_e: f64, gamma_e: f64) -> Result<f64> {
    check_non_negative("sigma_ext", sigma_ext)?;
    check_positive("omega_e", omega_e)?;
    check_positive("gamma_e", gamma_e)?;
    Ok(debye_from_sq_over_eps0(sigma_ext * HBAR_C_EV_NM * gamma_e / omega_e))
}
