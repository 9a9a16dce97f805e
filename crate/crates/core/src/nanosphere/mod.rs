//! Quasistatic Drude nanosphere with a radially oriented point emitter.
//!
//! The sphere's multipole plasmons form a ladder ω₁ < ω₂ < … → ω_∞. The
//! dipole (n = 1) is the bright mode; the quasi-degenerate n ≥ 2 modes are
//! lumped into a single dark pseudomode.

mod drude;
mod ladder;
mod rates;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

pub use drude::{drude_epsilon, mode_frequency, multipole_polarizability, DrudeMetal};
pub use ladder::{
    aggregate_pseudomode, coupling_strength, mode_ladder, spectral_density, ModeLadder, PlasmonMode, Pseudomode,
    SpectralDensity, TRUNCATION_LIMIT,
};
pub use rates::{
    bright_dipole_moment, bright_radiative_decay, dipole_from_extinction, emitter_radiative_decay,
    extinction_cross_section,
};

use crate::cmt::CmtParams;
use crate::error::{check_non_negative, check_positive};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SphereSystem {
    /// Sphere radius R, nm.
    pub radius: f64,
    /// Emitter to surface distance h, nm.
    pub gap: f64,
    pub eps_b: f64,
    pub metal: DrudeMetal,
    /// Emitter transition dipole, Debye.
    pub mu_e: f64,
    /// Emitter transition frequency, eV.
    pub omega_e: f64,
    /// Highest multipole order kept.
    pub n_max: u32,
}

impl Default for SphereSystem {
    fn default() -> Self {
        Self {
            radius: 5.0,
            gap: 1.0,
            eps_b: 1.0,
            metal: DrudeMetal::silver_surrogate(),
            mu_e: 100.0,
            omega_e: 3.4,
            n_max: 200,
        }
    }
}

impl SphereSystem {
    pub fn validate(&self) -> Result<()> {
        check_positive("nanosphere.radius", self.radius)?;
        check_positive("nanosphere.gap", self.gap)?;
        check_positive("nanosphere.eps_b", self.eps_b)?;
        if self.eps_b < 1.0 {
            return Err(Error::invalid(
                "nanosphere.eps_b",
                format!("must be >= 1 (got {})", self.eps_b),
            ));
        }
        self.metal.validate()?;
        check_non_negative("nanosphere.mu_e", self.mu_e)?;
        check_positive("nanosphere.omega_e", self.omega_e)?;
        if self.n_max < 2 {
            return Err(Error::invalid(
                "nanosphere.n_max",
                format!("must be >= 2 (got {})", self.n_max),
            ));
        }
        Ok(())
    }

    /// Emitter to sphere-centre distance d = R + h, nm.
    pub fn center_distance(&self) -> f64 {
        self.radius + self.gap
    }

    /// 1 + 2πJ(ω)/γ₀(ω), with γ₀ the emitter's free-space Larmor rate.
    pub fn purcell_factor(&self, ladder: &ModeLadder, omega: f64) -> Result<f64> {
        let gamma_0 = emitter_radiative_decay(self.mu_e, omega)?;
        if gamma_0 == 0.0 {
            return Err(Error::DivisionByZero("Purcell factor needs mu_e > 0".into()));
        }
        Ok(1.0 + 2.0 * PI * ladder.spectral_density(omega).total / gamma_0)
    }
}

/// Bright-mode and pseudomode parameters of a sphere–emitter geometry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectiveParams {
    pub g_b: f64,
    pub g_d: f64,
    pub omega_b: f64,
    pub omega_d: f64,
    /// Total bright linewidth γ_p + γ_B^r.
    pub gamma_b: f64,
    /// Radiative part of `gamma_b`.
    pub gamma_b_rad: f64,
    pub gamma_d: f64,
    /// Bright-mode dipole, Debye.
    pub mu_b: f64,
    /// Emitter free-space radiative rate.
    pub gamma_e_rad: f64,
    pub truncation_ratio: f64,
}

impl EffectiveParams {
    /// Classical three-mode parameters for an emitter at `omega_e` with total
    /// linewidth `gamma_e`. The dark pseudomode is purely non-radiative.
    pub fn to_cmt(&self, omega_e: f64, gamma_e: f64) -> Result<CmtParams> {
        let p = CmtParams {
            omega_b: self.omega_b,
            omega_d: self.omega_d,
            omega_e,
            gamma_b_rad: self.gamma_b_rad,
            gamma_b_nonrad: self.gamma_b - self.gamma_b_rad,
            gamma_d_rad: 0.0,
            gamma_d_nonrad: self.gamma_d,
            gamma_e_rad: self.gamma_e_rad.min(gamma_e),
            gamma_e_nonrad: (gamma_e - self.gamma_e_rad).max(0.0),
            g_b: self.g_b,
            g_d: self.g_d,
        };
        p.validate()?;
        Ok(p)
    }
}

pub fn effective_parameters(sys: &SphereSystem) -> Result<EffectiveParams> {
    let ladder = mode_ladder(sys)?;
    let bright = *ladder.bright();
    let pseudo = ladder.pseudomode(sys.metal.surface_plasmon_limit(sys.eps_b))?;
    let gamma_b_rad = bright_radiative_decay(&sys.metal, sys.eps_b, sys.radius, bright.omega)?;
    Ok(EffectiveParams {
        g_b: bright.g,
        g_d: pseudo.g_d,
        omega_b: bright.omega,
        omega_d: pseudo.omega_d,
        gamma_b: bright.gamma + gamma_b_rad,
        gamma_b_rad,
        gamma_d: pseudo.gamma_d,
        mu_b: bright_dipole_moment(gamma_b_rad, bright.omega, sys.eps_b)?,
        gamma_e_rad: emitter_radiative_decay(sys.mu_e, sys.omega_e)?,
        truncation_ratio: pseudo.truncation_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn reference_geometry() {
        let e = effective_parameters(&SphereSystem::default()).unwrap();
        assert_relative_eq!(e.omega_b, 3.0, epsilon = 1e-12);
        assert!((3.3..=3.45).contains(&e.omega_d));
        assert!(e.omega_d > e.omega_b);
        assert!(e.g_d > e.g_b);
        // values pinned by the coupling convention
        assert_relative_eq!(e.g_b, 0.2582, max_relative = 1e-3);
        assert!(e.gamma_e_rad < 1e-4);
        assert!(e.gamma_b > 0.1 && e.gamma_b_rad < 1e-3);
        for v in [e.g_b, e.g_d, e.omega_b, e.omega_d, e.gamma_b, e.gamma_d, e.mu_b, e.gamma_e_rad] {
            assert!(v > 0.0);
        }
    }

    #[test]
    fn dark_to_bright_ratio_drops_with_gap() {
        let ratio = |gap| {
            let e = effective_parameters(&SphereSystem {
                gap,
                ..SphereSystem::default()
            })
            .unwrap();
            e.g_d / e.g_b
        };
        let drop = ratio(1.0) / ratio(10.0);
        assert!((7.9..8.1).contains(&drop), "{drop}");
    }

    #[test]
    fn frequencies_are_scale_invariant() {
        let a = effective_parameters(&SphereSystem::default()).unwrap();
        let b = effective_parameters(&SphereSystem {
            radius: 10.0,
            gap: 2.0,
            ..SphereSystem::default()
        })
        .unwrap();
        assert_relative_eq!(a.omega_b, b.omega_b, epsilon = 1e-12);
        assert!((a.omega_d - b.omega_d).abs() < 1e-6);
    }

    #[test]
    fn bright_dipole_scales_as_radius_to_three_halves() {
        let mu = |radius| {
            effective_parameters(&SphereSystem {
                radius,
                ..SphereSystem::default()
            })
            .unwrap()
            .mu_b
        };
        assert_relative_eq!(mu(10.0) / mu(5.0), 2f64.powf(1.5), max_relative = 1e-10);
    }

    #[test]
    fn validation() {
        let bad = [
            SphereSystem { radius: 0.0, ..SphereSystem::default() },
            SphereSystem { gap: -1.0, ..SphereSystem::default() },
            SphereSystem { eps_b: 0.5, ..SphereSystem::default() },
            SphereSystem { n_max: 1, ..SphereSystem::default() },
        ];
        for s in bad {
            assert!(matches!(s.validate(), Err(Error::InvalidParameter { .. })));
        }
    }

    #[test]
    fn cmt_conversion_keeps_rates() {
        let e = effective_parameters(&SphereSystem::default()).unwrap();
        let p = e.to_cmt(3.4, 0.1).unwrap();
        assert_relative_eq!(p.gamma_b(), e.gamma_b, epsilon = 1e-15);
        assert_relative_eq!(p.gamma_e(), 0.1, epsilon = 1e-15);
        assert_eq!(p.gamma_d_rad, 0.0);
    }

    #[test]
    fn purcell_factor_is_large_near_resonance() {
        let sys = SphereSystem::default();
        let ladder = mode_ladder(&sys).unwrap();
        assert!(sys.purcell_factor(&ladder, 3.4).unwrap() > 1e3);
    }
}
