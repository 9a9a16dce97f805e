use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::HilbertSpace;
use crate::cmt::{ComplexMatrix3, BRIGHT, DARK, EMITTER};
use crate::error::{check_finite, check_non_negative, check_positive};
use crate::nanosphere::EffectiveParams;
use crate::Result;

/// Largest drive amplitude max|ℰ_j| used by default, eV.
pub const WEAK_DRIVE: f64 = 1e-4;

/// Parameters of the driven emitter / bright / dark system.
///
/// Drive amplitudes are ℰ_j = −μ_j E_L with μ in Debye and E_L in eV/D.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct QuantumParams {
    pub omega_e: f64,
    pub omega_b: f64,
    pub omega_d: f64,
    pub gamma_e: f64,
    pub gamma_b: f64,
    pub gamma_d: f64,
    pub g_b: f64,
    pub g_d: f64,
    pub mu_e: f64,
    pub mu_b: f64,
    /// Dark-mode dipole seen by the drive; zero by default.
    pub mu_d: f64,
    /// Drive field, eV per Debye.
    pub e_l: f64,
    pub omega_l: f64,
}

impl Default for QuantumParams {
    fn default() -> Self {
        Self {
            omega_e: 3.5,
            omega_b: 3.0,
            omega_d: 3.5,
            gamma_e: 0.1,
            gamma_b: 0.2,
            gamma_d: 0.2,
            g_b: 0.24,
            g_d: 0.8,
            mu_e: 100.0,
            mu_b: 450.0,
            mu_d: 0.0,
            e_l: WEAK_DRIVE / 450.0,
            omega_l: 3.0,
        }
    }
}

impl QuantumParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("quantum.omega_e", self.omega_e),
            ("quantum.omega_b", self.omega_b),
            ("quantum.omega_d", self.omega_d),
            ("quantum.omega_l", self.omega_l),
            ("quantum.e_l", self.e_l),
        ] {
            check_finite(name, v)?;
        }
        for (name, v) in [
            ("quantum.gamma_e", self.gamma_e),
            ("quantum.gamma_b", self.gamma_b),
            ("quantum.gamma_d", self.gamma_d),
            ("quantum.g_b", self.g_b),
            ("quantum.g_d", self.g_d),
            ("quantum.mu_e", self.mu_e),
            ("quantum.mu_b", self.mu_b),
            ("quantum.mu_d", self.mu_d),
        ] {
            check_non_negative(name, v)?;
        }
        Ok(())
    }

    /// Sets E_L so that the strongest drive amplitude equals `max_drive` eV.
    pub fn with_weak_drive(mut self, max_drive: f64) -> Self {
        let mu = self.mu_e.max(self.mu_b).max(self.mu_d);
        self.e_l = if mu > 0.0 { max_drive / mu } else { 0.0 };
        self
    }

    /// Quantum model of a nanosphere geometry, emitter at `omega_e` with
    /// dipole `mu_e` and total linewidth `gamma_e`.
    pub fn from_effective(e: &EffectiveParams, omega_e: f64, gamma_e: f64, mu_e: f64) -> Result<Self> {
        check_positive("omega_e", omega_e)?;
        let p = Self {
            omega_e,
            omega_b: e.omega_b,
            omega_d: e.omega_d,
            gamma_e,
            gamma_b: e.gamma_b,
            gamma_d: e.gamma_d,
            g_b: e.g_b,
            g_d: e.g_d,
            mu_e,
            mu_b: e.mu_b,
            mu_d: 0.0,
            e_l: 0.0,
            omega_l: e.omega_b,
        }
        .with_weak_drive(WEAK_DRIVE);
        p.validate()?;
        Ok(p)
    }

    /// (ℰ_E, ℰ_B, ℰ_D) in eV.
    pub fn drives(&self) -> (f64, f64, f64) {
        (-self.mu_e * self.e_l, -self.mu_b * self.e_l, -self.mu_d * self.e_l)
    }

    pub fn shifted(mut self, offset: f64) -> Self {
        self.omega_e += offset;
        self.omega_b += offset;
        self.omega_d += offset;
        self.omega_l += offset;
        self
    }

    /// Single-excitation block of H̃ in the laboratory frame, ordered
    /// (bright, dark, emitter) like the classical model.
    pub fn single_excitation_block(&self) -> ComplexMatrix3 {
        let mut h = ComplexMatrix3::zeros();
        h[(BRIGHT, BRIGHT)] = Complex64::new(self.omega_b, -0.5 * self.gamma_b);
        h[(DARK, DARK)] = Complex64::new(self.omega_d, -0.5 * self.gamma_d);
        h[(EMITTER, EMITTER)] = Complex64::new(self.omega_e, -0.5 * self.gamma_e);
        for (mode, g) in [(BRIGHT, self.g_b), (DARK, self.g_d)] {
            h[(mode, EMITTER)] = Complex64::from(g);
            h[(EMITTER, mode)] = Complex64::from(g);
        }
        h
    }
}

/// Operators of the model on a given space.
#[derive(Debug, Clone)]
pub struct Operators {
    pub sigma_minus: DMatrix<Complex64>,
    pub a_b: DMatrix<Complex64>,
    pub a_d: DMatrix<Complex64>,
}

impl Operators {
    pub fn new(space: &HilbertSpace) -> Self {
        Self {
            sigma_minus: space.sigma_minus(),
            a_b: space.bright_annihilation(),
            a_d: space.dark_annihilation(),
        }
    }

    /// â_s = μ_E σ₋ + μ_B â_B.
    pub fn scattering(&self, mu_e: f64, mu_b: f64) -> DMatrix<Complex64> {
        &self.sigma_minus * Complex64::from(mu_e) + &self.a_b * Complex64::from(mu_b)
    }
}

fn number(op: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    op.adjoint() * op
}

fn hermitian_from_ops(qp: &QuantumParams, ops: &Operators) -> DMatrix<Complex64> {
    let c = Complex64::from;
    let (sm, ab, ad) = (&ops.sigma_minus, &ops.a_b, &ops.a_d);
    let (drive_e, drive_b, drive_d) = qp.drives();
    let mut h = number(sm) * c(qp.omega_e - qp.omega_l)
        + number(ab) * c(qp.omega_b - qp.omega_l)
        + number(ad) * c(qp.omega_d - qp.omega_l);
    h += (ab.adjoint() * sm + ab * sm.adjoint()) * c(qp.g_b);
    h += (ad.adjoint() * sm + ad * sm.adjoint()) * c(qp.g_d);
    h += (sm + sm.adjoint()) * c(0.5 * drive_e);
    h += (ab + ab.adjoint()) * c(0.5 * drive_b);
    h += (ad + ad.adjoint()) * c(0.5 * drive_d);
    h
}

/// Rotating-frame Hamiltonian Ĥ (Hermitian, no decay).
pub fn hermitian_hamiltonian(qp: &QuantumParams, space: &HilbertSpace) -> Result<DMatrix<Complex64>> {
    qp.validate()?;
    Ok(hermitian_from_ops(qp, &Operators::new(space)))
}

pub(crate) fn effective_from_ops(qp: &QuantumParams, ops: &Operators) -> DMatrix<Complex64> {
    let mut h = hermitian_from_ops(qp, ops);
    let decay = number(&ops.sigma_minus) * Complex64::from(qp.gamma_e)
        + number(&ops.a_b) * Complex64::from(qp.gamma_b)
        + number(&ops.a_d) * Complex64::from(qp.gamma_d);
    h -= decay * Complex64::new(0.0, 0.5);
    h
}

/// H̃ = Ĥ − i(γ_E σ₊σ₋ + γ_B â_B†â_B + γ_D â_D†â_D)/2.
pub fn effective_hamiltonian(qp: &QuantumParams, space: &HilbertSpace) -> Result<DMatrix<Complex64>> {
    qp.validate()?;
    Ok(effective_from_ops(qp, &Operators::new(space)))
}
