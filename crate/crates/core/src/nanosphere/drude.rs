use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_finite, check_non_negative, check_positive};
use crate::{Error, Result};

/// Drude permittivity ε(ω) = ε_∞ − ω_p² / (ω(ω + iγ_p)).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DrudeMetal {
    pub eps_inf: f64,
    /// eV
    pub omega_p: f64,
    /// eV
    pub gamma_p: f64,
}

impl Default for DrudeMetal {
    fn default() -> Self {
        Self::silver_surrogate()
    }
}

impl DrudeMetal {
    /// Metal whose dipole resonance sits at `omega_1` and whose multipole
    /// ladder accumulates at `omega_inf`, both for background `eps_b`.
    pub fn calibrated(omega_1: f64, omega_inf: f64, eps_b: f64, gamma_p: f64) -> Result<Self> {
        check_positive("omega_1", omega_1)?;
        check_positive("eps_b", eps_b)?;
        if omega_inf <= omega_1 {
            return Err(Error::invalid("omega_inf", "must exceed omega_1"));
        }
        let (w1, wi) = (omega_1 * omega_1, omega_inf * omega_inf);
        let eps_inf = eps_b * (2.0 * w1 - wi) / (wi - w1);
        let omega_p = (wi * (eps_inf + eps_b)).sqrt();
        let metal = Self {
            eps_inf,
            omega_p,
            gamma_p,
        };
        metal.validate()?;
        Ok(metal)
    }

    /// Silver-like surrogate: ω₁ = 3.0 eV, ω_∞ = 3.4 eV in vacuum,
    /// γ_p = 0.1 eV. Gives ε_∞ = 2.515625 and ω_p = 6.375 eV.
    pub fn silver_surrogate() -> Self {
        Self {
            eps_inf: 2.515625,
            omega_p: 6.375,
            gamma_p: 0.1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_finite("metal.eps_inf", self.eps_inf)?;
        if self.eps_inf < 1.0 {
            return Err(Error::invalid(
                "metal.eps_inf",
                format!("must be >= 1 (got {})", self.eps_inf),
            ));
        }
        check_positive("metal.omega_p", self.omega_p)?;
        check_non_negative("metal.gamma_p", self.gamma_p)
    }

    pub fn epsilon(&self, omega: f64) -> Complex64 {
        let w = Complex64::new(omega, 0.0);
        Complex64::from(self.eps_inf)
            - self.omega_p * self.omega_p / (w * (w + Complex64::new(0.0, self.gamma_p)))
    }

    /// ∂ Re ε / ∂ω, exact for the Drude form.
    pub fn d_re_epsilon(&self, omega: f64) -> f64 {
        let (wp2, g2, w2) = (self.omega_p.powi(2), self.gamma_p.powi(2), omega * omega);
        2.0 * omega * wp2 / (w2 + g2).powi(2)
    }

    /// Lossless quasistatic resonance of order `n`: n ε(ω) + (n+1) ε_b = 0.
    pub fn mode_frequency(&self, eps_b: f64, n: u32) -> f64 {
        let n = f64::from(n);
        self.omega_p * (n / (n * self.eps_inf + (n + 1.0) * eps_b)).sqrt()
    }

    /// Accumulation point of the mode ladder, ω_p / sqrt(ε_∞ + ε_b).
    pub fn surface_plasmon_limit(&self, eps_b: f64) -> f64 {
        self.omega_p / (self.eps_inf + eps_b).sqrt()
    }
}

pub fn drude_epsilon(m: &DrudeMetal, omega: f64) -> Result<Complex64> {
    check_positive("omega", omega)?;
    Ok(m.epsilon(omega))
}

pub fn mode_frequency(m: &DrudeMetal, eps_b: f64, n: u32) -> Result<f64> {
    m.validate()?;
    check_positive("eps_b", eps_b)?;
    if n == 0 {
        return Err(Error::invalid("n", "multipole order must be >= 1"));
    }
    Ok(m.mode_frequency(eps_b, n))
}

/// Quasistatic multipole polarizability
/// α_n = R^{2n+1} n(ε − ε_b) / (n ε + (n+1) ε_b), in nm^{2n+1}.
pub fn multipole_polarizability(m: &DrudeMetal, eps_b: f64, radius: f64, n: u32, omega: f64) -> Result<Complex64> {
    m.validate()?;
    check_positive("eps_b", eps_b)?;
    check_positive("radius", radius)?;
    check_positive("omega", omega)?;
    if n == 0 {
        return Err(Error::invalid("n", "multipole order must be >= 1"));
    }
    let eps = m.epsilon(omega);
    let nf = f64::from(n);
    let denom = eps * nf + (nf + 1.0) * eps_b;
    let scale = nf * m.eps_inf + (nf + 1.0) * eps_b;
    if denom.norm() <= 1e-12 * scale {
        return Err(Error::Pole { order: n, omega });
    }
    Ok(radius.powi(2 * n as i32 + 1) * nf * (eps - eps_b) / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn surrogate_calibration() {
        let m = DrudeMetal::calibrated(3.0, 3.4, 1.0, 0.1).unwrap();
        assert_relative_eq!(m.eps_inf, 2.515625, epsilon = 1e-12);
        assert_relative_eq!(m.omega_p, 6.375, epsilon = 1e-12);
        let s = DrudeMetal::silver_surrogate();
        assert_relative_eq!(s.eps_inf, m.eps_inf, epsilon = 1e-12);
        assert_relative_eq!(s.omega_p, m.omega_p, epsilon = 1e-12);
        assert_relative_eq!(m.epsilon(3.0).re, -2.0, epsilon = 0.01);
    }

    #[test]
    fn epsilon_limits() {
        let m = DrudeMetal {
            gamma_p: 0.0,
            ..DrudeMetal::silver_surrogate()
        };
        let zero = m.omega_p / m.eps_inf.sqrt();
        assert!(m.epsilon(zero).norm() < 1e-12);
        assert_relative_eq!(m.epsilon(1e6).re, m.eps_inf, epsilon = 1e-9);
        let lossy = DrudeMetal::silver_surrogate();
        for w in [0.5, 3.0, 10.0] {
            assert!(lossy.epsilon(w).im > 0.0);
        }
        assert!(drude_epsilon(&lossy, 0.0).is_err());
    }

    #[test]
    fn mode_ladder_frequencies() {
        let m = DrudeMetal::silver_surrogate();
        assert_relative_eq!(mode_frequency(&m, 1.0, 1).unwrap(), 3.0, epsilon = 1e-12);
        assert_relative_eq!(mode_frequency(&m, 1.0, 1_000_000).unwrap(), 3.4, epsilon = 1e-6);
        let w2 = mode_frequency(&m, 1.0, 2).unwrap();
        assert!((w2 - 3.18).abs() < 0.01, "{w2}");
        // independent root of Re(2ε + 3) = 0 for the lossless metal
        let lossless = DrudeMetal { gamma_p: 0.0, ..m };
        let f = |w: f64| 2.0 * lossless.epsilon(w).re + 3.0;
        let (mut lo, mut hi) = (2.0, 4.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(lo) * f(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        assert_relative_eq!(w2, lo, epsilon = 1e-12);
        assert!(mode_frequency(&m, 1.0, 0).is_err());
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let m = DrudeMetal::silver_surrogate();
        for w in [2.5, 3.0, 3.4] {
            let h = 1e-5;
            let fd = (m.epsilon(w + h).re - m.epsilon(w - h).re) / (2.0 * h);
            assert_relative_eq!(m.d_re_epsilon(w), fd, max_relative = 1e-6);
        }
        let lossless = DrudeMetal { gamma_p: 0.0, ..m };
        assert_relative_eq!(lossless.d_re_epsilon(3.0), 2.0 * 6.375f64.powi(2) / 27.0, epsilon = 1e-12);
    }

    #[test]
    fn polarizability_limits() {
        let m = DrudeMetal::silver_surrogate();
        // index matched: ε(ω) = ε_b
        let matched = DrudeMetal {
            eps_inf: 2.0,
            omega_p: 1.0,
            gamma_p: 0.0,
        };
        assert!(multipole_polarizability(&matched, 1.0, 5.0, 3, 1.0).unwrap().norm() < 1e-12);
        // perfect conductor
        let conductor = DrudeMetal {
            eps_inf: 1.0,
            omega_p: 1e8,
            gamma_p: 0.0,
        };
        let a1 = multipole_polarizability(&conductor, 1.0, 5.0, 1, 1.0).unwrap();
        assert_relative_eq!(a1.re, 125.0, max_relative = 1e-9);
        let direct = multipole_polarizability(&m, 1.0, 2.0, 1, 2.9).unwrap();
        let eps = m.epsilon(2.9);
        assert!((direct - 8.0 * (eps - 1.0) / (eps + 2.0)).norm() < 1e-12);
        assert!(direct.im > 0.0);
    }

    #[test]
    fn lossless_pole_is_reported() {
        let m = DrudeMetal {
            gamma_p: 0.0,
            ..DrudeMetal::silver_surrogate()
        };
        let w = m.mode_frequency(1.0, 2);
        assert!(matches!(
            multipole_polarizability(&m, 1.0, 5.0, 2, w),
            Err(Error::Pole { order: 2, .. })
        ));
    }

    #[test]
    fn dipole_polarizability_linewidth_is_drude_damping() {
        let m = DrudeMetal::silver_surrogate();
        let grid: Vec<f64> = (0..20001).map(|i| 2.5 + i as f64 * 1e-4).collect();
        let im: Vec<f64> = grid
            .iter()
            .map(|&w| multipole_polarizability(&m, 1.0, 5.0, 1, w).unwrap().im)
            .collect();
        let (peak, &max) = im
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap();
        let above: Vec<usize> = (0..im.len()).filter(|&i| im[i] >= max / 2.0).collect();
        let fwhm = grid[*above.last().unwrap()] - grid[above[0]];
        assert!((grid[peak] - 3.0).abs() < 0.01);
        assert!((fwhm - m.gamma_p).abs() < 0.05 * m.gamma_p, "fwhm {fwhm}");
    }
}
