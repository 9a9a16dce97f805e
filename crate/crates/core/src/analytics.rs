//! Closed-form polariton algebra of the lossless three-mode model.
//!
//! Frequencies here are measured in the rotating frame of the emitter:
//! Δ_D = ω_D − ω_E and Δ_B = ω_B − ω_E. The single-excitation basis is
//! ordered `{|e⟩, |D⟩, |B⟩}`.
//!
//! Two sign conventions exist for the optimal detuning. The emitter-relative
//! one, δ_E^opt = g_D² / (ω_D − ω_B) with δ_E = ω_E − ω_B, is returned by
//! [`optimal_detuning`]; the bright-relative one, Δ_B^opt = −δ_E^opt, by
//! [`optimal_bright_detuning`].

use nalgebra::{Matrix2, Matrix3};

use crate::error::{check_finite, check_non_negative};
use crate::{Error, Result};

/// Eigen-decomposition of the emitter/dark 2×2 block [[0, g_D], [g_D, Δ_D]].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DarkBlockResult {
    pub delta_minus: f64,
    pub delta_plus: f64,
    /// Υ = sqrt(Δ_D² + 4 g_D²) = δ₊ − δ₋.
    pub upsilon: f64,
    /// cos(θ/2): weight of the emitter in the lower dark polariton.
    pub cos_half: f64,
    /// sin(θ/2).
    pub sin_half: f64,
}

impl DarkBlockResult {
    /// Orthogonal transform T = [[cos, sin], [−sin, cos]] whose columns are
    /// the lower and upper dark polaritons.
    pub fn transform(&self) -> Matrix2<f64> {
        Matrix2::new(self.cos_half, self.sin_half, -self.sin_half, self.cos_half)
    }
}

pub fn dark_block_eigenvalues(delta_d: f64, g_d: f64) -> Result<DarkBlockResult> {
    check_finite("delta_d", delta_d)?;
    check_non_negative("g_d", g_d)?;
    let upsilon = delta_d.hypot(2.0 * g_d);
    if upsilon == 0.0 {
        // fully degenerate block: any basis diagonalises it
        let h = std::f64::consts::FRAC_1_SQRT_2;
        return Ok(DarkBlockResult {
            delta_minus: 0.0,
            delta_plus: 0.0,
            upsilon: 0.0,
            cos_half: h,
            sin_half: h,
        });
    }

    // the larger-magnitude eigenvalue is cancellation free; the other follows
    // from δ₊δ₋ = −g_D²
    let (delta_minus, delta_plus) = if delta_d >= 0.0 {
        let plus = 0.5 * (delta_d + upsilon);
        (-g_d * g_d / plus, plus)
    } else {
        let minus = 0.5 * (delta_d - upsilon);
        (minus, -g_d * g_d / minus)
    };

    // cos²(θ/2) = (1 + Δ_D/Υ)/2, sin(θ/2)cos(θ/2) = g_D/Υ
    let mixed = g_d / upsilon;
    let (cos_half, sin_half) = if delta_d >= 0.0 {
        let cos_half = (0.5 * (1.0 + delta_d / upsilon)).sqrt();
        (cos_half, mixed / cos_half)
    } else {
        let sin_half = (0.5 * (1.0 - delta_d / upsilon)).sqrt();
        (mixed / sin_half, sin_half)
    };

    Ok(DarkBlockResult {
        delta_minus,
        delta_plus,
        upsilon,
        cos_half,
        sin_half,
    })
}

/// Hermitian single-excitation Hamiltonian in the `{|e⟩, |D⟩, |B⟩}` basis,
/// rotating frame of the emitter.
pub fn single_excitation_hamiltonian(g_b: f64, g_d: f64, delta_d: f64, delta_b: f64) -> Matrix3<f64> {
    Matrix3::new(
        0.0, g_d, g_b, //
        g_d, delta_d, 0.0, //
        g_b, 0.0, delta_b,
    )
}

/// The single-excitation Hamiltonian expressed in the basis of the two dark
/// polaritons and the bright mode.
pub fn partial_diagonalize(g_b: f64, g_d: f64, delta_d: f64, delta_b: f64) -> Result<Matrix3<f64>> {
    check_non_negative("g_b", g_b)?;
    check_finite("delta_b", delta_b)?;
    let block = dark_block_eigenvalues(delta_d, g_d)?;
    let lower = g_b * block.cos_half;
    let upper = g_b * block.sin_half;
    Ok(Matrix3::new(
        block.delta_minus, 0.0, lower, //
        0.0, block.delta_plus, upper, //
        lower, upper, delta_b,
    ))
}

/// Bright-mode vacuum Rabi splitting
/// Ω = √2 g_B sqrt(1 + Δ_D / sqrt(4 g_D² + Δ_D²)) = 2 g_B cos(θ/2).
///
/// This is the splitting of the lower dark polariton and the bright mode
/// when they are resonant; the weak coupling of the upper dark polariton to
/// the bright mode is neglected, so it agrees with the exact three-state
/// gap only up to corrections of order g_B³.
pub fn bright_rabi_splitting(g_b: f64, g_d: f64, omega_d: f64, omega_e: f64) -> Result<f64> {
    check_non_negative("g_b", g_b)?;
    check_non_negative("g_d", g_d)?;
    check_finite("omega_d", omega_d)?;
    check_finite("omega_e", omega_e)?;
    let delta_d = omega_d - omega_e;
    if g_d == 0.0 && delta_d == 0.0 {
        return Err(Error::UndefinedLimit(
            "bright Rabi splitting is 0/0 for g_D = 0 and omega_D = omega_E".into(),
        ));
    }
    let block = dark_block_eigenvalues(delta_d, g_d)?;
    Ok(2.0 * g_b * block.cos_half)
}

/// Optimal emitter detuning δ_E^opt = g_D² / (ω_D − ω_B), measured as
/// ω_E − ω_B.
pub fn optimal_detuning(g_d: f64, omega_b: f64, omega_d: f64) -> Result<f64> {
    check_non_negative("g_d", g_d)?;
    check_finite("omega_b", omega_b)?;
    check_finite("omega_d", omega_d)?;
    if omega_d == omega_b {
        return Err(Error::DivisionByZero(
            "optimal detuning requires omega_D != omega_B".into(),
        ));
    }
    Ok(g_d * g_d / (omega_d - omega_b))
}

/// Bright-relative optimal detuning Δ_B^opt = −g_D² / (ω_D − ω_B).
pub fn optimal_bright_detuning(g_d: f64, omega_b: f64, omega_d: f64) -> Result<f64> {
    optimal_detuning(g_d, omega_b, omega_d).map(|d| -d)
}

/// Bright-mode frequency that satisfies the optimal-detuning condition for
/// fixed ω_D and ω_E, i.e. solves ω_E − ω_B = g_D² / (ω_D − ω_B) with
/// ω_B < ω_D.
pub fn optimal_bright_frequency(g_d: f64, omega_d: f64, omega_e: f64) -> Result<f64> {
    let block = dark_block_eigenvalues(omega_d - omega_e, g_d)?;
    Ok(omega_d - block.delta_plus)
}
