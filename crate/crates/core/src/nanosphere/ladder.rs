use std::f64::consts::PI;

use serde::Serialize;

use super::SphereSystem;
use crate::units::dipole_energy_unit;
use crate::{Error, Result};

const FIT_POINTS: usize = 2001;
const PEAK_TOL: f64 = 1e-7;
/// Largest tolerated share of the last multipole in the dark density at the
/// pseudomode peak before the ladder counts as under-resolved.
pub const TRUNCATION_LIMIT: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlasmonMode {
    pub n: u32,
    /// eV
    pub omega: f64,
    /// eV
    pub gamma: f64,
    /// eV
    pub g: f64,
}

impl PlasmonMode {
    /// Lorentzian share of this mode in J(ω), normalised to integrate to g².
    pub fn lorentzian(&self, omega: f64) -> f64 {
        let d = omega - self.omega;
        self.g * self.g / (2.0 * PI) * self.gamma / (d * d + 0.25 * self.gamma * self.gamma)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeLadder {
    pub modes: Vec<PlasmonMode>,
}

/// J(ω) split into the dipole (n = 1) and dark (n ≥ 2) contributions, in eV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralDensity {
    pub total: f64,
    pub dipole: f64,
    pub dark: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Pseudomode {
    pub g_d: f64,
    pub omega_d: f64,
    pub gamma_d: f64,
    /// Last multipole's share of the dark density at the peak.
    pub truncation_ratio: f64,
}

impl Pseudomode {
    pub fn is_converged(&self) -> bool {
        self.truncation_ratio <= TRUNCATION_LIMIT
    }
}

/// g_n for a radially oriented emitter, in eV.
///
/// g_n² = C μ² (n+1)² (R/d)^{2n+1} / d³ · (2n+1) ω_n³ / (2n ω_p²) / ε_b with
/// C = D² / (4πε₀ nm³). Evaluated in log space so large n cannot overflow.
pub fn coupling_strength(sys: &SphereSystem, n: u32) -> Result<f64> {
    sys.validate()?;
    if n == 0 {
        return Err(Error::invalid("n", "multipole order must be >= 1"));
    }
    Ok(coupling_unchecked(sys, n))
}

fn coupling_unchecked(sys: &SphereSystem, n: u32) -> f64 {
    if sys.mu_e == 0.0 {
        return 0.0;
    }
    let nf = f64::from(n);
    let d = sys.center_distance();
    let omega_n = sys.metal.mode_frequency(sys.eps_b, n);
    let ln_g2 = dipole_energy_unit().ln() + 2.0 * sys.mu_e.ln() + 2.0 * (nf + 1.0).ln()
        + (2.0 * nf + 1.0) * (sys.radius / d).ln()
        - 3.0 * d.ln()
        + (2.0 * nf + 1.0).ln()
        + 3.0 * omega_n.ln()
        - (2.0 * nf).ln()
        - 2.0 * sys.metal.omega_p.ln()
        - sys.eps_b.ln();
    (0.5 * ln_g2).exp()
}

pub fn mode_ladder(sys: &SphereSystem) -> Result<ModeLadder> {
    sys.validate()?;
    let modes = (1..=sys.n_max)
        .map(|n| PlasmonMode {
            n,
            omega: sys.metal.mode_frequency(sys.eps_b, n),
            gamma: sys.metal.gamma_p,
            g: coupling_unchecked(sys, n),
        })
        .collect();
    Ok(ModeLadder { modes })
}

impl ModeLadder {
    pub fn bright(&self) -> &PlasmonMode {
        &self.modes[0]
    }

    pub fn dark_modes(&self) -> &[PlasmonMode] {
        &self.modes[1..]
    }

    pub fn spectral_density(&self, omega: f64) -> SpectralDensity {
        let dipole = self.bright().lorentzian(omega);
        let dark = self.dark_density(omega);
        SpectralDensity {
            total: dipole + dark,
            dipole,
            dark,
        }
    }

    pub fn dark_density(&self, omega: f64) -> f64 {
        self.dark_modes().iter().map(|m| m.lorentzian(omega)).sum()
    }

    /// Σ_{n≥2} g_n².
    pub fn dark_weight(&self) -> f64 {
        self.dark_modes().iter().map(|m| m.g * m.g).sum()
    }

    /// g_n / g_D for the dark modes; the pseudomode operator is the
    /// corresponding superposition of the multipole operators.
    pub fn pseudomode_weights(&self) -> Vec<f64> {
        let g_d = self.dark_weight().sqrt();
        self.dark_modes().iter().map(|m| m.g / g_d).collect()
    }

    /// Peak and FWHM of the dark density over [ω₂ − 1, ω_∞ + 1] eV.
    pub fn pseudomode(&self, omega_limit: f64) -> Result<Pseudomode> {
        let dark = self.dark_modes();
        let Some(first) = dark.first() else {
            return Err(Error::FitFailure("the ladder has no dark modes".into()));
        };
        let g_d = self.dark_weight().sqrt();
        if g_d == 0.0 {
            return Err(Error::FitFailure("dark couplings vanish".into()));
        }
        let (lo, hi) = (first.omega - 1.0, omega_limit + 1.0);
        let step = (hi - lo) / (FIT_POINTS - 1) as f64;
        let f = |w: f64| self.dark_density(w);
        let values: Vec<f64> = (0..FIT_POINTS).map(|i| f(lo + i as f64 * step)).collect();
        let peak = values
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .expect("non-empty grid");
        if peak == 0 || peak == FIT_POINTS - 1 {
            return Err(Error::FitFailure(format!(
                "dark density has no interior maximum on [{lo:.3}, {hi:.3}] eV"
            )));
        }
        let omega_d = golden_max(&f, lo + (peak - 1) as f64 * step, lo + (peak + 1) as f64 * step);
        let half = 0.5 * f(omega_d);

        let left = (0..peak).rev().find(|&i| values[i] < half);
        let right = (peak + 1..FIT_POINTS).find(|&i| values[i] < half);
        let (Some(left), Some(right)) = (left, right) else {
            return Err(Error::FitFailure(
                "half maximum not reached inside the fit window".into(),
            ));
        };
        let below = |w: f64| f(w) < half;
        let w_left = bisect(&below, lo + left as f64 * step, omega_d);
        let w_right = bisect(&below, lo + right as f64 * step, omega_d);

        let last = dark.last().expect("non-empty").lorentzian(omega_d);
        Ok(Pseudomode {
            g_d,
            omega_d,
            gamma_d: w_right - w_left,
            truncation_ratio: last / (2.0 * half),
        })
    }
}

fn golden_max(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > PEAK_TOL {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Boundary between `outside` (where `below` holds) and `inside`.
fn bisect(below: &impl Fn(f64) -> bool, mut outside: f64, mut inside: f64) -> f64 {
    for _ in 0..100 {
        let mid = 0.5 * (outside + inside);
        if below(mid) {
            outside = mid;
        } else {
            inside = mid;
        }
        if (outside - inside).abs() < 1e-12 {
            break;
        }
    }
    0.5 * (outside + inside)
}

pub fn spectral_density(sys: &SphereSystem, omega: f64) -> Result<SpectralDensity> {
    Ok(mode_ladder(sys)?.spectral_density(omega))
}

pub fn aggregate_pseudomode(sys: &SphereSystem) -> Result<Pseudomode> {
    let ladder = mode_ladder(sys)?;
    ladder.pseudomode(sys.metal.surface_plasmon_limit(sys.eps_b))
}
