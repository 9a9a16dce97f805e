//! Temporal coupled-mode theory of the bright mode / dark mode / emitter
//! triad.
//!
//! Amplitudes are ordered `(B, D, E)` everywhere in this module.

mod eigen;

pub use eigen::{eigenmodes, hopfield, EigenSet, Polariton};

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_non_negative, check_positive};
use crate::{linalg, Error, Result};

/// 3×3 complex matrix in the `(B, D, E)` basis, entries in eV.
pub type ComplexMatrix3 = Matrix3<Complex64>;

pub const BRIGHT: usize = 0;
pub const DARK: usize = 1;
pub const EMITTER: usize = 2;

/// Parameters of the classical three-mode system. All values in eV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CmtParams {
    pub omega_b: f64,
    pub omega_d: f64,
    pub omega_e: f64,
    pub gamma_b_rad: f64,
    pub gamma_b_nonrad: f64,
    pub gamma_d_rad: f64,
    pub gamma_d_nonrad: f64,
    pub gamma_e_rad: f64,
    pub gamma_e_nonrad: f64,
    pub g_b: f64,
    pub g_d: f64,
}

impl Default for CmtParams {
    /// Bright mode at 3 eV, dark pseudomode and emitter at 3.4 eV,
    /// γ_B^rad = γ_D^nonrad = 0.05 eV, γ_E = 0.1 eV, g_B = 0.05 eV,
    /// g_D = 0.4 eV.
    fn default() -> Self {
        Self {
            omega_b: 3.0,
            omega_d: 3.4,
            omega_e: 3.4,
            gamma_b_rad: 0.05,
            gamma_b_nonrad: 0.0,
            gamma_d_rad: 0.0,
            gamma_d_nonrad: 0.05,
            gamma_e_rad: 0.0,
            gamma_e_nonrad: 0.1,
            g_b: 0.05,
            g_d: 0.4,
        }
    }
}

impl CmtParams {
    pub fn validate(&self) -> Result<()> {
        check_positive("omega_b", self.omega_b)?;
        check_positive("omega_d", self.omega_d)?;
        check_positive("omega_e", self.omega_e)?;
        check_non_negative("gamma_b_rad", self.gamma_b_rad)?;
        check_non_negative("gamma_b_nonrad", self.gamma_b_nonrad)?;
        check_non_negative("gamma_d_rad", self.gamma_d_rad)?;
        check_non_negative("gamma_d_nonrad", self.gamma_d_nonrad)?;
        check_non_negative("gamma_e_rad", self.gamma_e_rad)?;
        check_non_negative("gamma_e_nonrad", self.gamma_e_nonrad)?;
        check_non_negative("g_b", self.g_b)?;
        check_non_negative("g_d", self.g_d)?;
        Ok(())
    }

    pub fn gamma_b(&self) -> f64 {
        self.gamma_b_rad + self.gamma_b_nonrad
    }

    pub fn gamma_d(&self) -> f64 {
        self.gamma_d_rad + self.gamma_d_nonrad
    }

    pub fn gamma_e(&self) -> f64 {
        self.gamma_e_rad + self.gamma_e_nonrad
    }

    /// Far-field (indirect) bright–emitter coupling, sqrt(γ_B^rad γ_E^rad / 4).
    pub fn gamma_ind(&self) -> f64 {
        (self.gamma_b_rad * self.gamma_e_rad / 4.0).sqrt()
    }

    /// Emitter detuning from the bright mode, δ_E = ω_E − ω_B.
    pub fn emitter_detuning(&self) -> f64 {
        self.omega_e - self.omega_b
    }

    /// Largest total decay rate of the three modes.
    pub fn max_total_rate(&self) -> f64 {
        self.gamma_b().max(self.gamma_d()).max(self.gamma_e())
    }
}

/// Non-Hermitian Hamiltonian of the three-mode system.
pub fn build_cmt_hamiltonian(p: &CmtParams) -> Result<ComplexMatrix3> {
    p.validate()?;
    let half = Complex64::new(0.0, 0.5);
    let mut h = ComplexMatrix3::zeros();
    h[(BRIGHT, BRIGHT)] = p.omega_b - half * p.gamma_b();
    h[(DARK, DARK)] = p.omega_d - half * p.gamma_d();
    h[(EMITTER, EMITTER)] = p.omega_e - half * p.gamma_e();
    let g_be = Complex64::new(p.g_b, -p.gamma_ind());
    h[(BRIGHT, EMITTER)] = g_be;
    h[(EMITTER, BRIGHT)] = g_be;
    h[(DARK, EMITTER)] = Complex64::from(p.g_d);
    h[(EMITTER, DARK)] = Complex64::from(p.g_d);
    Ok(h)
}

/// Mode-radiation coupling constants κ_j = sqrt(γ_j^rad).
pub fn coupling_vector(p: &CmtParams) -> Result<Vector3<Complex64>> {
    p.validate()?;
    Ok(Vector3::new(
        p.gamma_b_rad.sqrt().into(),
        p.gamma_d_rad.sqrt().into(),
        p.gamma_e_rad.sqrt().into(),
    ))
}

/// Steady-state response to a harmonic drive of frequency `omega`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Response {
    /// Mode amplitudes `(c_B, c_D, c_E)`.
    pub amplitudes: Vector3<Complex64>,
    /// Scattered amplitude s₋ = κ·a.
    pub s_minus: Complex64,
}

impl Response {
    pub fn intensity(&self) -> f64 {
        self.s_minus.norm_sqr()
    }
}

/// Solves `i(H − ω) a = κ s₊` and returns `a` together with `s₋ = κ·a`.
///
/// The amplitude carries the resolvent phase convention
/// `a = κ s₊ / (i(H − ω))`; the time-harmonic amplitude of the equations of
/// motion is `−i a`. Intensities do not depend on this phase.
pub fn steady_state_response(p: &CmtParams, omega: f64, s_plus: Complex64) -> Result<Response> {
    let h = build_cmt_hamiltonian(p)?;
    let kappa = coupling_vector(p)?;
    response_from_parts(&h, &kappa, omega, s_plus)
}

fn response_from_parts(
    h: &ComplexMatrix3,
    kappa: &Vector3<Complex64>,
    omega: f64,
    s_plus: Complex64,
) -> Result<Response> {
    if !omega.is_finite() {
        return Err(Error::invalid("omega", "must be finite"));
    }
    let shifted = (h - ComplexMatrix3::identity() * Complex64::from(omega)) * Complex64::i();
    let amplitudes = linalg::solve3(shifted, &(kappa * s_plus))?;
    // ⟨κ|a⟩ with real κ: plain (unconjugated) dot product
    let s_minus = kappa.iter().zip(amplitudes.iter()).map(|(k, a)| k * a).sum();
    Ok(Response { amplitudes, s_minus })
}

/// Scattered amplitude and intensity sampled on a frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub omega: Vec<f64>,
    pub s_minus: Vec<Complex64>,
    pub intensity: Vec<f64>,
}

pub(crate) fn check_grid(name: &str, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::invalid(name, "grid is empty"));
    }
    if grid.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid(name, "grid contains non-finite values"));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid(name, "grid must be strictly increasing"));
    }
    Ok(())
}

/// |s₋(ω)|² for unit incident amplitude on `grid`.
pub fn scattering_spectrum(p: &CmtParams, grid: &[f64]) -> Result<Spectrum> {
    check_grid("grid", grid)?;
    let h = build_cmt_hamiltonian(p)?;
    let kappa = coupling_vector(p)?;
    let s_minus = grid
        .par_iter()
        .enumerate()
        .map(|(index, &omega)| {
            response_from_parts(&h, &kappa, omega, Complex64::from(1.0))
                .map(|r| r.s_minus)
                .map_err(|e| Error::GridPoint {
                    index,
                    omega,
                    source: Box::new(e),
                })
        })
        .collect::<Result<Vec<_>>>()?;
    let intensity = s_minus.iter().map(|s| s.norm_sqr()).collect();
    Ok(Spectrum {
        omega: grid.to_vec(),
        s_minus,
        intensity,
    })
}
